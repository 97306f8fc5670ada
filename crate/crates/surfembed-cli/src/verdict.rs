//! The verdict document written by `decide`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use surfembed::band_theta::BWitness;
use surfembed::decision_engine::{BCharStatus, Outcome, TraceStep, Verdict};

pub const TOOL_VERSION: &str = concat!("surfembed ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Regular,
    Homotopy,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "detail", rename_all = "snake_case")]
pub enum WitnessDoc {
    LambdaPair([String; 2]),
    MixedAnnulus(String),
    ThetaOne(String),
    TorusSummand(usize),
    Sphere(usize),
    ProjectivePlane(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BCharDoc {
    pub status: String,
    pub witness: Option<WitnessDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceDoc {
    pub node: String,
    pub reason: String,
    pub values: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictFile {
    pub tool_version: String,
    pub mode: Mode,
    pub outcome: String,
    pub km: Option<u8>,
    pub t: Option<u8>,
    pub b_char: BCharDoc,
    pub trace: Vec<TraceDoc>,
}

fn witness_doc(w: &BWitness) -> WitnessDoc {
    match w {
        BWitness::LambdaPair(a, b) => WitnessDoc::LambdaPair([a.clone(), b.clone()]),
        BWitness::MixedAnnulus(a) => WitnessDoc::MixedAnnulus(a.clone()),
        BWitness::ThetaOne(a) => WitnessDoc::ThetaOne(a.clone()),
        BWitness::TorusSummand(i) => WitnessDoc::TorusSummand(*i),
        BWitness::Sphere(i) => WitnessDoc::Sphere(*i),
        BWitness::ProjectivePlane(i) => WitnessDoc::ProjectivePlane(*i),
    }
}

fn witness_of(w: &WitnessDoc) -> BWitness {
    match w {
        WitnessDoc::LambdaPair([a, b]) => BWitness::LambdaPair(a.clone(), b.clone()),
        WitnessDoc::MixedAnnulus(a) => BWitness::MixedAnnulus(a.clone()),
        WitnessDoc::ThetaOne(a) => BWitness::ThetaOne(a.clone()),
        WitnessDoc::TorusSummand(i) => BWitness::TorusSummand(*i),
        WitnessDoc::Sphere(i) => BWitness::Sphere(*i),
        WitnessDoc::ProjectivePlane(i) => BWitness::ProjectivePlane(*i),
    }
}

pub fn b_char_doc(s: &BCharStatus) -> BCharDoc {
    match s {
        BCharStatus::Yes => BCharDoc { status: "yes".into(), witness: None },
        BCharStatus::No(w) => BCharDoc { status: "no".into(), witness: Some(witness_doc(w)) },
        BCharStatus::Undetermined => BCharDoc { status: "undetermined".into(), witness: None },
    }
}

impl VerdictFile {
    pub fn new(mode: Mode, v: &Verdict) -> VerdictFile {
        VerdictFile {
            tool_version: TOOL_VERSION.into(),
            mode,
            outcome: v.outcome.as_str().into(),
            km: v.km,
            t: v.t,
            b_char: b_char_doc(&v.b_char),
            trace: v
                .trace
                .iter()
                .map(|s| TraceDoc { node: s.node.clone(), reason: s.reason.clone(), values: s.values.clone() })
                .collect(),
        }
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("verdict serializes");
        s.push('\n');
        s
    }

    pub fn from_text(text: &str) -> Result<VerdictFile, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// The engine verdict this document describes.
    pub fn to_verdict(&self) -> Result<Verdict, String> {
        let outcome = [
            Outcome::RegHomotopicToEmbedding,
            Outcome::NotRegHomotopicToEmbedding,
            Outcome::HomotopicToEmbedding,
            Outcome::NoConclusion,
        ]
        .into_iter()
        .find(|o| o.as_str() == self.outcome)
        .ok_or_else(|| format!("unknown outcome {:?}", self.outcome))?;
        let b_char = match (self.b_char.status.as_str(), &self.b_char.witness) {
            ("yes", None) => BCharStatus::Yes,
            ("no", Some(w)) => BCharStatus::No(witness_of(w)),
            ("undetermined", None) => BCharStatus::Undetermined,
            (s, _) => return Err(format!("inconsistent b_char status {s:?}")),
        };
        Ok(Verdict {
            outcome,
            km: self.km,
            t: self.t,
            b_char,
            trace: self
                .trace
                .iter()
                .map(|s| TraceStep { node: s.node.clone(), reason: s.reason.clone(), values: s.values.clone() })
                .collect(),
        })
    }
}
