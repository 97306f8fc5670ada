//! Knot files: `{"name": ..., "seifert": [[...]]}`.

use serde::{Deserialize, Serialize};

use surfembed::knot_tools::{KnotError, KnotSpec, SeifertMatrix};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KnotFile {
    pub name: String,
    pub seifert: Vec<Vec<i64>>,
}

#[derive(Debug, thiserror::Error)]
pub enum KnotFileError {
    #[error("invalid knot file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("/seifert: {0}")]
    Matrix(#[from] KnotError),
}

pub fn parse_knot(text: &str) -> Result<KnotSpec, KnotFileError> {
    let f: KnotFile = serde_json::from_str(text)?;
    Ok(KnotSpec { name: f.name, seifert: SeifertMatrix::new(f.seifert)? })
}

pub fn encode_knot(k: &KnotSpec) -> String {
    let f = KnotFile { name: k.name.clone(), seifert: k.seifert.entries().to_vec() };
    let mut s = serde_json::to_string_pretty(&f).expect("knot serializes");
    s.push('\n');
    s
}

/// Parses an evaluation point `p/q` (or an integer `p`).
pub fn parse_omega(s: &str) -> Result<(i64, i64), String> {
    let (p, q) = s.split_once('/').unwrap_or((s, "1"));
    let p = p.trim().parse::<i64>().map_err(|e| format!("bad numerator in {s:?}: {e}"))?;
    let q = q.trim().parse::<i64>().map_err(|e| format!("bad denominator in {s:?}: {e}"))?;
    Ok((p, q))
}
