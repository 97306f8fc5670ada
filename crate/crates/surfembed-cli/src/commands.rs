//! Subcommand implementations. Each returns the text for stdout or a
//! [`CliError`] carrying the process exit code.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde_json::{json, Value};

use surfembed::band_theta::BCharacteristic;
use surfembed::decision_engine::{
    compute_km, flowchart, gamma_for, homotopy_analysis, BCharStatus, EngineError, Issue, ProblemInstance,
};
use surfembed::gamma_algebra::{coefficient_at, mu1_home, reduce, Coefficient, Mu1Home, OrderTag};
use surfembed::group_core::{AmbientGroup, GroupElem, Sign};
use surfembed::knot_tools::{
    alexander_at_minus_one, arf, cp2_genus_lower_bound, cp2_genus_verdict, levine_tristram, m_genus_simply_connected,
    shake_genus_pm1, sigma_d, Cp2Verdict, KnotError, KnotSpec, MGenus,
};

use crate::knots::{parse_knot, KnotFileError};
use crate::schema::parse_instance;
use crate::verdict::{b_char_doc, Mode, VerdictFile};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_INCONSISTENT: u8 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: u8,
    pub message: String,
    pub issues: Vec<Issue>,
}

impl CliError {
    pub fn invalid(message: impl Into<String>) -> CliError {
        CliError { code: EXIT_INVALID, message: message.into(), issues: Vec::new() }
    }

    pub fn issues(issues: Vec<Issue>) -> CliError {
        CliError { code: EXIT_INVALID, message: format!("{} validation issue(s)", issues.len()), issues }
    }

    /// Text for stderr: the message followed by one line per issue.
    pub fn render(&self) -> String {
        let mut s = format!("error: {}\n", self.message);
        for i in &self.issues {
            s.push_str(&format!("  {i}\n"));
        }
        s
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> CliError {
        match e {
            EngineError::Validation(issues) => CliError::issues(issues),
            EngineError::EulerBoundViolation { .. } => {
                CliError { code: EXIT_INCONSISTENT, message: e.to_string(), issues: Vec::new() }
            }
            other => CliError::invalid(other.to_string()),
        }
    }
}

impl From<KnotError> for CliError {
    fn from(e: KnotError) -> CliError {
        let code = match e {
            KnotError::ArfMethodsDisagree { .. } | KnotError::Internal(_) | KnotError::PrecisionCap => {
                EXIT_INCONSISTENT
            }
            _ => EXIT_INVALID,
        };
        CliError { code, message: e.to_string(), issues: Vec::new() }
    }
}

impl From<KnotFileError> for CliError {
    fn from(e: KnotFileError) -> CliError {
        match e {
            KnotFileError::Matrix(k) => {
                let mut c = CliError::from(k);
                c.message = format!("/seifert: {}", c.message);
                c
            }
            other => CliError::invalid(other.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::invalid(format!("cannot read {}: {e}", path.display())))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

pub fn load_instance(path: &Path) -> Result<ProblemInstance, CliError> {
    parse_instance(&read(path)?).map_err(CliError::issues)
}

pub fn validate_text(text: &str) -> Result<String, CliError> {
    parse_instance(text).map_err(CliError::issues)?;
    Ok("ok\n".into())
}

pub fn decide_instance(inst: &ProblemInstance, mode: Mode) -> Result<VerdictFile, CliError> {
    let v = match mode {
        Mode::Regular => flowchart(inst)?,
        Mode::Homotopy => homotopy_analysis(inst)?,
    };
    Ok(VerdictFile::new(mode, &v))
}

pub fn decide_text(text: &str, mode: Mode) -> Result<String, CliError> {
    let inst = parse_instance(text).map_err(CliError::issues)?;
    Ok(decide_instance(&inst, mode)?.to_text())
}

/// Decides every `*.json` file in `dir` concurrently. The report lists
/// files in name order; the exit code is the largest per-file code.
pub fn decide_batch(dir: &Path, mode: Mode) -> Result<(u8, String), CliError> {
    let entries = std::fs::read_dir(dir).map_err(|e| CliError::invalid(format!("cannot read {}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let results: Vec<(u8, Value)> = files
        .par_iter()
        .map(|p| {
            let name = p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            match read(p).and_then(|t| decide_text(&t, mode)) {
                Ok(text) => {
                    let v: Value = serde_json::from_str(&text).expect("verdict is JSON");
                    (EXIT_OK, json!({"file": name, "exit_code": 0, "verdict": v}))
                }
                Err(e) => {
                    let issues: Vec<Value> =
                        e.issues.iter().map(|i| json!({"pointer": i.pointer, "message": i.message})).collect();
                    (e.code, json!({"file": name, "exit_code": e.code, "error": e.message, "issues": issues}))
                }
            }
        })
        .collect();
    let code = results.iter().map(|r| r.0).max().unwrap_or(EXIT_OK);
    let report: Vec<Value> = results.into_iter().map(|r| r.1).collect();
    Ok((code, pretty(&Value::Array(report))))
}

pub fn km_text(text: &str) -> Result<String, CliError> {
    let inst = parse_instance(text).map_err(CliError::issues)?;
    let r = compute_km(&inst)?;
    let status = match r.b_char {
        BCharacteristic::Yes => BCharStatus::Yes,
        BCharacteristic::No(w) => BCharStatus::No(w),
    };
    Ok(pretty(&json!({"km": r.km, "t": r.t, "b_char": b_char_doc(&status)})))
}

fn elem_value(e: &GroupElem) -> Value {
    match e {
        GroupElem::Index(i) => json!(i),
        GroupElem::Tuple(v) => json!(v),
    }
}

fn tag_str(t: OrderTag) -> &'static str {
    match t {
        OrderTag::Infinite => "Z",
        OrderTag::Two => "Z/2",
    }
}

/// Parses a query element: an index for table groups, or a
/// comma-separated coordinate tuple for abelian groups.
pub fn parse_elem(group: &AmbientGroup, s: &str) -> Result<GroupElem, CliError> {
    let e = match group {
        AmbientGroup::FiniteTable(_) => {
            GroupElem::Index(s.trim().parse().map_err(|_| CliError::invalid(format!("bad element {s:?}")))?)
        }
        AmbientGroup::FGAbelian(_) => GroupElem::Tuple(
            s.split(',')
                .map(|x| x.trim().parse::<i64>())
                .collect::<Result<_, _>>()
                .map_err(|_| CliError::invalid(format!("bad element {s:?}")))?,
        ),
    };
    if !group.is_valid(&e) {
        return Err(CliError::invalid(format!("{s:?} is not a group element")));
    }
    Ok(group.canon(&e))
}

/// Decomposition report for the intersection group of a component pair,
/// with the coefficients of that pair's intersection number at each query.
pub fn gamma_text(text: &str, comps: (usize, usize), queries: &[String]) -> Result<String, CliError> {
    let inst = parse_instance(text).map_err(CliError::issues)?;
    let (i, j) = comps;
    let n = inst.components.len();
    if i >= n || j >= n {
        return Err(CliError::invalid(format!("components ({i}, {j}) out of range, instance has {n}")));
    }
    let (i, j) = (i.min(j), i.max(j));
    let gamma = gamma_for(&inst, (i, j));
    let list: Vec<(Sign, GroupElem)> = inst
        .double_points
        .iter()
        .filter(|p| p.components == (i, j))
        .map(|p| (p.sign, p.eta.clone()))
        .collect();
    let value = reduce(&list, &gamma);
    let orbits = gamma.orbits();
    let (free_rank, z2_count) = match gamma.invariants() {
        Some((f, t)) => (json!(f), json!(t)),
        None => (Value::Null, Value::Null),
    };
    let orbit_list = orbits.map(|os| {
        os.iter().map(|o| json!({"rep": elem_value(&o.rep), "tag": tag_str(o.tag)})).collect::<Vec<_>>()
    });
    let home = if i == j {
        match mu1_home(gamma.context()) {
            Ok(Mu1Home::Z) => json!("Z"),
            Ok(Mu1Home::Z2) => json!("Z/2"),
            Err(_) => Value::Null,
        }
    } else {
        Value::Null
    };
    let mut qs = Vec::new();
    for q in queries {
        let e = parse_elem(&inst.group, q)?;
        let loc = gamma.locate(&e);
        let coeff = match coefficient_at(&value, &gamma, &e) {
            Coefficient::Int(c) => json!({"ring": "Z", "value": c}),
            Coefficient::Mod2(c) => json!({"ring": "Z/2", "value": c}),
        };
        qs.push(json!({
            "elem": elem_value(&e),
            "rep": elem_value(&loc.rep),
            "tag": tag_str(loc.tag),
            "section_sign": loc.section_sign,
            "coefficient": coeff,
        }));
    }
    let terms: Vec<Value> = value
        .terms()
        .map(|(rep, tag, c)| json!({"rep": elem_value(rep), "tag": tag_str(tag), "coefficient": c}))
        .collect();
    Ok(pretty(&json!({
        "components": [i, j],
        "self_pairing": i == j,
        "free_rank": free_rank,
        "z2_count": z2_count,
        "identity_tag": tag_str(gamma.identity_tag()),
        "identity_coefficient_home": home,
        "orbits": orbit_list,
        "value": {"zero": value.is_zero(), "terms": terms},
        "queries": qs,
    })))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KnotQuery {
    Arf,
    Alexander,
    Signature { p: i64, q: i64 },
    SigmaD { d: i64 },
    Cp2Bound { d: i64 },
    Cp2Verdict,
    ShakeGenus,
    MGenus { rank: usize },
}

fn cp2_json(v: &Cp2Verdict) -> Value {
    json!({
        "lower": v.lower,
        "upper": v.upper,
        "exact": v.exact,
        "window": v.window,
        "incomplete": v.incomplete,
        "bounds": v.bounds.iter().map(|&(d, b)| json!({"d": d, "bound": b})).collect::<Vec<_>>(),
    })
}

pub fn knot_value(k: &KnotSpec, query: &KnotQuery) -> Result<Value, CliError> {
    let v = &k.seifert;
    Ok(match *query {
        KnotQuery::Arf => json!({"arf": arf(v)?}),
        KnotQuery::Alexander => json!({"alexander_at_minus_one": alexander_at_minus_one(v).to_string()}),
        KnotQuery::Signature { p, q } => {
            json!({"omega": format!("{p}/{q}"), "signature": levine_tristram(v, p, q)?})
        }
        KnotQuery::SigmaD { d } => json!({"d": d, "sigma_d": sigma_d(v, d)?}),
        KnotQuery::Cp2Bound { d } => json!({"d": d, "genus_lower_bound": cp2_genus_lower_bound(v, d)?}),
        KnotQuery::Cp2Verdict => cp2_json(&cp2_genus_verdict(v)?),
        KnotQuery::ShakeGenus => json!({"shake_genus_pm1": shake_genus_pm1(v)?}),
        KnotQuery::MGenus { rank } => match m_genus_simply_connected(rank, v)? {
            MGenus::Zero => json!({"rank": rank, "genus": 0, "routed": false}),
            MGenus::Routed { verdict, flagged } => json!({
                "rank": rank,
                "genus": verdict.exact,
                "routed": true,
                "flagged": flagged,
                "cp2_verdict": cp2_json(&verdict),
            }),
        },
    })
}

pub fn knot_text(text: &str, query: &KnotQuery) -> Result<String, CliError> {
    let k = parse_knot(text)?;
    let mut v = knot_value(&k, query)?;
    v.as_object_mut().expect("object").insert("name".into(), json!(k.name));
    Ok(pretty(&v))
}

pub fn examples_list() -> String {
    let mut s = String::new();
    for (kind, list) in [("instance", crate::corpus::INSTANCES), ("knot", crate::corpus::KNOTS)] {
        for e in list {
            s.push_str(&format!("{kind:<8} {:<20} {}\n", e.name, e.summary));
        }
    }
    s
}

pub fn examples_show(name: &str) -> Result<String, CliError> {
    crate::corpus::find(name).map(|e| e.text.to_string()).ok_or_else(|| CliError::invalid(format!("no example named {name:?}")))
}

pub fn read_path(path: &Path) -> Result<String, CliError> {
    read(path)
}
