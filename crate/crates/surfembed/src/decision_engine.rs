//! The embedding decision procedure, the Kervaire-Milnor invariant and the
//! numeric consistency checks that accompany it.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::band_theta::{
    first_congruence_failure, is_b_characteristic, theta, BCharacteristic, BWitness, BandCatalog,
    BandError, SurfaceModel,
};
use crate::gamma_algebra::{build_gamma, mu1_home, reduce, GammaElement, Mu1Home, PairingContext};
use crate::group_core::{AmbientGroup, Character, GroupElem, Sign, SignedSubgroup};
use crate::whitney_calc::{
    add_finger_disc, check_pairs, restrict_collection, t_alt, t_count, CollectionKind, DoublePoint,
    FingerDisc, WhitneyCollection, WhitneyError,
};

/// One problem found while validating an instance, located by JSON pointer.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Issue {
    pub pointer: String,
    pub message: String,
}

impl Issue {
    pub fn new(pointer: impl Into<String>, message: impl Into<String>) -> Issue {
        Issue { pointer: pointer.into(), message: message.into() }
    }
}

impl std::fmt::Display for Issue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.pointer, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("instance is invalid ({} issues)", .0.len())]
    Validation(Vec<Issue>),
    #[error("intersection or self-intersection numbers do not vanish")]
    PrimaryObstructionNonzero,
    #[error("some component has no algebraically dual sphere")]
    NoDualSpheres,
    #[error("F^t has double points but no Whitney collection is given")]
    MissingWhitneyData,
    #[error("whitney data: {0}")]
    Whitney(#[from] WhitneyError),
    #[error("band data: {0}")]
    Band(#[from] BandError),
    #[error("b-characteristic closed surface with chi = {chi} < {bound} in an abelian fundamental group")]
    EulerBoundViolation { chi: i64, bound: i64 },
    #[error("no F^t component has an orientation-reversing loop in the kernel")]
    PreconditionW1Ker,
    #[error("Euler number {0} is not 2 mod 4")]
    InvalidEulerParity(i64),
    #[error("signature minus self-intersection ({0}) is not divisible by 8")]
    NotDivisibleBy8(i64),
}

/// Immersion data for one surface component.
#[derive(Debug, Clone)]
pub struct ComponentData {
    pub subgroup: SignedSubgroup,
    pub has_alg_dual: bool,
    pub dual_framed: bool,
    pub w2: Option<u8>,
    pub euler: Option<i64>,
}

#[derive(Debug, Clone)]
pub struct ProblemInstance {
    pub group: AmbientGroup,
    pub w_m: Character,
    pub good_group: bool,
    pub components: Vec<ComponentData>,
    pub surface: SurfaceModel,
    pub double_points: Vec<DoublePoint>,
    pub whitney: Option<WhitneyCollection>,
    /// `(F.a, a.a)` mod 2 for each declared sphere.
    pub spheres: Vec<(u8, u8)>,
    /// `(F.R, R.R)` mod 2 for each declared projective plane.
    pub rp2: Vec<(u8, u8)>,
    pub bands: BandCatalog,
    /// Components declared to contain a torus summand whose curves are
    /// null-homotopic in the ambient manifold.
    pub torus_summand: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Outcome {
    RegHomotopicToEmbedding,
    NotRegHomotopicToEmbedding,
    HomotopicToEmbedding,
    NoConclusion,
}

impl Outcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            Outcome::RegHomotopicToEmbedding => "RegHomotopicToEmbedding",
            Outcome::NotRegHomotopicToEmbedding => "NotRegHomotopicToEmbedding",
            Outcome::HomotopicToEmbedding => "HomotopicToEmbedding",
            Outcome::NoConclusion => "NoConclusion",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BCharStatus {
    Yes,
    No(BWitness),
    Undetermined,
}

/// One visited node of the decision procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub node: String,
    pub reason: String,
    pub values: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub outcome: Outcome,
    pub km: Option<u8>,
    pub t: Option<u8>,
    pub b_char: BCharStatus,
    pub trace: Vec<TraceStep>,
}

pub mod nodes {
    pub const PRIMARY: &str = "primary obstruction vanishes";
    pub const RESTRICT: &str = "restrict to F^t";
    pub const EULER_BOUND: &str = "abelian Euler characteristic bound";
    pub const BOUNDARY_FORM: &str = "surface form nonzero on band boundaries";
    pub const BAND_INVARIANT: &str = "band invariant nontrivial";
    pub const T_COUNT: &str = "t-count of F^t vanishes";
    pub const DUALS: &str = "algebraically dual spheres exist";
    pub const GOOD: &str = "fundamental group is good";
    pub const KERNEL_CASE: &str = "orientation-reversing loop in the kernel";
    pub const OUTCOME: &str = "outcome";
}

fn step(trace: &mut Vec<TraceStep>, node: &str, reason: &str, values: &[(&str, String)]) {
    trace.push(TraceStep {
        node: node.into(),
        reason: reason.into(),
        values: values.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
    });
}

fn yes_no(b: bool) -> String {
    if b { "yes".into() } else { "no".into() }
}

/// Checks every cross-reference and parity field, reporting all problems.
pub fn validate(inst: &ProblemInstance) -> Result<(), EngineError> {
    let mut issues = Vec::new();
    let n = inst.components.len();
    if inst.surface.components.len() != n {
        issues.push(Issue::new(
            "/surface/components",
            format!("{} surface components for {} immersion components", inst.surface.components.len(), n),
        ));
    }
    for (i, c) in inst.components.iter().enumerate() {
        if let Some(w2) = c.w2 {
            if w2 > 1 {
                issues.push(Issue::new(format!("/components/{i}/w2"), "must be 0 or 1"));
            }
        }
        if let (Some(w2), Some(e)) = (c.w2, c.euler) {
            let ctx = PairingContext::self_pair(inst.group.clone(), inst.w_m.clone(), c.subgroup.clone());
            if mu1_home(&ctx) == Ok(Mu1Home::Z) && (e - w2 as i64).rem_euclid(2) != 0 {
                issues.push(Issue::new(format!("/components/{i}/euler"), "parity disagrees with w2"));
            }
        }
    }
    let mut ids = BTreeSet::new();
    for (k, p) in inst.double_points.iter().enumerate() {
        let (a, b) = p.components;
        if a >= n || b >= n {
            issues.push(Issue::new(format!("/double_points/{k}/components"), "references an absent component"));
        } else if a > b {
            issues.push(Issue::new(format!("/double_points/{k}/components"), "component pair must be ordered i <= j"));
        }
        if p.sign != 1 && p.sign != -1 {
            issues.push(Issue::new(format!("/double_points/{k}/sign"), "must be 1 or -1"));
        }
        if !inst.group.is_valid(&p.eta) {
            issues.push(Issue::new(format!("/double_points/{k}/eta"), "not an element of the group"));
        }
        if !ids.insert(p.id) {
            issues.push(Issue::new(format!("/double_points/{k}/id"), "duplicate id"));
        }
    }
    if let Some(w) = &inst.whitney {
        validate_whitney(inst, w, &mut issues);
    }
    validate_bands(inst, &mut issues);
    for (k, list) in [("spheres", &inst.spheres), ("rp2", &inst.rp2)] {
        for (m, &(a, b)) in list.iter().enumerate() {
            if a > 1 || b > 1 {
                issues.push(Issue::new(format!("/catalogs/{k}/{m}"), "parities must be 0 or 1"));
            }
        }
    }
    for (k, &c) in inst.torus_summand.iter().enumerate() {
        if c >= n {
            issues.push(Issue::new(format!("/flags/torus_summand/{k}"), "references an absent component"));
        }
    }
    if issues.is_empty() {
        Ok(())
    } else {
        issues.sort();
        issues.dedup();
        Err(EngineError::Validation(issues))
    }
}

fn validate_whitney(inst: &ProblemInstance, w: &WhitneyCollection, issues: &mut Vec<Issue>) {
    if w.check_shape().is_err() {
        issues.push(Issue::new("/whitney_collection/boundary_matrix", "must be square, symmetric and match the disc count"));
    }
    let by_id: BTreeMap<usize, &DoublePoint> = inst.double_points.iter().map(|p| (p.id, p)).collect();
    let mut disc_ids = BTreeSet::new();
    for (k, d) in w.discs.iter().enumerate() {
        if !disc_ids.insert(d.id) {
            issues.push(Issue::new(format!("/whitney_collection/discs/{k}/id"), "duplicate id"));
        }
        if d.interior.len() != inst.components.len() {
            issues.push(Issue::new(format!("/whitney_collection/discs/{k}/interior"), "needs one count per component"));
        }
        if d.mu_boundary > 1 {
            issues.push(Issue::new(format!("/whitney_collection/discs/{k}/mu_boundary"), "must be 0 or 1"));
        }
        let ends: Vec<Option<&&DoublePoint>> = [d.points.0, d.points.1].iter().map(|i| by_id.get(i)).collect();
        for (slot, e) in ends.iter().enumerate() {
            if e.is_none() {
                issues.push(Issue::new(format!("/whitney_collection/discs/{k}/points/{slot}"), "unknown double point"));
            }
        }
        if let [Some(p), Some(q)] = ends[..] {
            if p.components != q.components || d.points.0 == d.points.1 {
                issues.push(Issue::new(format!("/whitney_collection/discs/{k}/points"), "points lie on different component pairs"));
            } else if p.components.0 < inst.components.len() && p.components.1 < inst.components.len() {
                let g = gamma_for(inst, p.components);
                let list = [(p.sign, p.eta.clone()), (q.sign, q.eta.clone())];
                if !reduce(&list, &g).is_zero() {
                    issues.push(Issue::new(format!("/whitney_collection/discs/{k}/points"), "points do not cancel"));
                }
            }
        }
    }
}

fn validate_bands(inst: &ProblemInstance, issues: &mut Vec<Issue>) {
    let dim = inst.surface.dim();
    for (k, r) in inst.bands.records.iter().enumerate() {
        let ptr = format!("/catalogs/bands/records/{k}");
        if let Err(e) = r.check_shape(dim, inst.bands.class_dim) {
            issues.push(Issue::new(ptr.clone(), e.to_string()));
            continue;
        }
        if r.boundary_components.iter().any(|&c| c >= inst.components.len()) {
            issues.push(Issue::new(format!("{ptr}/boundary_components"), "references an absent component"));
        }
        for (m, (cls, w)) in r.boundary_classes.iter().zip(&r.boundary_w1).enumerate() {
            if inst.surface.w1_of(cls) != *w {
                issues.push(Issue::new(format!("{ptr}/boundary_w1/{m}"), "disagrees with w1 of the boundary class"));
            }
        }
        if let Err(e) = r.check_admissible() {
            issues.push(Issue::new(ptr.clone(), e.to_string()));
        }
    }
    if let Err(BandError::Conflict { second, .. }) = crate::band_theta::validate_theta_well_defined(&inst.bands) {
        issues.push(Issue::new("/catalogs/bands/records", format!("record {second} conflicts with an earlier record of the same class")));
    }
}

/// The intersection-number group for a component pair.
pub fn gamma_for(inst: &ProblemInstance, comps: (usize, usize)) -> crate::gamma_algebra::GammaGroup {
    let (i, j) = comps;
    let sf = inst.components[i].subgroup.clone();
    let ctx = if i == j {
        PairingContext::self_pair(inst.group.clone(), inst.w_m.clone(), sf)
    } else {
        PairingContext::pair(inst.group.clone(), inst.w_m.clone(), sf, inst.components[j].subgroup.clone())
    };
    build_gamma(ctx)
}

/// Intersection numbers per ordered pair `i < j` and self-intersection
/// numbers per component, restricted to the pairs that carry points.
pub fn primary_values(inst: &ProblemInstance, drop_identity: bool) -> BTreeMap<(usize, usize), GammaElement> {
    let mut lists: BTreeMap<(usize, usize), Vec<(Sign, GroupElem)>> = BTreeMap::new();
    let id = inst.group.identity();
    for p in &inst.double_points {
        let (a, b) = p.components;
        if drop_identity && a == b && inst.group.canon(&p.eta) == id {
            continue;
        }
        lists.entry((a, b)).or_default().push((p.sign, p.eta.clone()));
    }
    lists
        .into_iter()
        .map(|(k, l)| {
            let g = gamma_for(inst, k);
            (k, reduce(&l, &g))
        })
        .collect()
}

fn first_nonzero(values: &BTreeMap<(usize, usize), GammaElement>) -> Option<(usize, usize)> {
    values.iter().find(|(_, v)| !v.is_zero()).map(|(k, _)| *k)
}

/// Components without framed algebraically dual spheres.
pub fn restrict_ft(inst: &ProblemInstance) -> Vec<usize> {
    (0..inst.components.len())
        .filter(|&i| !(inst.components[i].has_alg_dual && inst.components[i].dual_framed))
        .collect()
}

/// Band condition for the F^t part: torus summands, the boundary form,
/// the band invariant and the sphere and projective plane congruences.
pub fn b_char_status(inst: &ProblemInstance, ft: &[usize]) -> BCharacteristic {
    let set: BTreeSet<usize> = ft.iter().copied().collect();
    if let Some(&c) = inst.torus_summand.iter().filter(|c| set.contains(c)).min() {
        return BCharacteristic::No(BWitness::TorusSummand(c));
    }
    let cat = ft_catalog(inst, &set);
    if let BCharacteristic::No(w) = is_b_characteristic(&cat, &inst.surface) {
        return BCharacteristic::No(w);
    }
    if let Some(k) = first_congruence_failure(&inst.rp2) {
        return BCharacteristic::No(BWitness::ProjectivePlane(k));
    }
    if let Some(k) = first_congruence_failure(&inst.spheres) {
        return BCharacteristic::No(BWitness::Sphere(k));
    }
    BCharacteristic::Yes
}

fn ft_catalog(inst: &ProblemInstance, set: &BTreeSet<usize>) -> BandCatalog {
    BandCatalog {
        class_dim: inst.bands.class_dim,
        records: inst
            .bands
            .records
            .iter()
            .filter(|r| r.boundary_components.iter().all(|c| set.contains(c)))
            .cloned()
            .collect(),
    }
}

/// The t-count of F^t: convenient collections use the interior count,
/// weak ones the corrected count.
pub fn ft_t_value(inst: &ProblemInstance, ft: &[usize]) -> Result<u8, EngineError> {
    let set: BTreeSet<usize> = ft.iter().copied().collect();
    let pts: Vec<DoublePoint> = inst
        .double_points
        .iter()
        .filter(|p| set.contains(&p.components.0) && set.contains(&p.components.1))
        .cloned()
        .collect();
    let coll = match &inst.whitney {
        Some(w) => restrict_collection(&inst.double_points, ft, w),
        None if pts.is_empty() => return Ok(0),
        None => return Err(EngineError::MissingWhitneyData),
    };
    check_pairs(&pts, ft, &coll)?;
    Ok(match coll.kind {
        CollectionKind::Convenient => t_count(&pts, ft, &coll)?,
        CollectionKind::Weak => t_alt(&pts, ft, &coll)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KmReport {
    pub km: u8,
    pub t: Option<u8>,
    pub b_char: BCharacteristic,
}

/// The Kervaire-Milnor invariant.
pub fn compute_km(inst: &ProblemInstance) -> Result<KmReport, EngineError> {
    validate(inst)?;
    if first_nonzero(&primary_values(inst, false)).is_some() {
        return Err(EngineError::PrimaryObstructionNonzero);
    }
    let ft = restrict_ft(inst);
    match b_char_status(inst, &ft) {
        BCharacteristic::Yes => {
            let t = ft_t_value(inst, &ft)?;
            Ok(KmReport { km: t, t: Some(t), b_char: BCharacteristic::Yes })
        }
        no => {
            if !all_duals(inst) {
                return Err(EngineError::NoDualSpheres);
            }
            Ok(KmReport { km: 0, t: None, b_char: no })
        }
    }
}

fn all_duals(inst: &ProblemInstance) -> bool {
    inst.components.iter().all(|c| c.has_alg_dual)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EulerBound {
    Ok,
    Violation { chi: i64, bound: i64 },
    NotApplicable,
}

/// A b-characteristic closed connected surface in a manifold with abelian
/// fundamental group on `n` generators has `chi >= -2n`.
pub fn abelian_euler_bound_check(inst: &ProblemInstance, n: usize) -> EulerBound {
    let comps = &inst.surface.components;
    if !inst.group.is_abelian() || comps.len() != 1 || comps[0].boundary != 0 {
        return EulerBound::NotApplicable;
    }
    let ft = restrict_ft(inst);
    if b_char_status(inst, &ft) != BCharacteristic::Yes {
        return EulerBound::NotApplicable;
    }
    let chi = comps[0].euler_characteristic();
    let bound = -2 * n as i64;
    if chi < bound {
        EulerBound::Violation { chi, bound }
    } else {
        EulerBound::Ok
    }
}

fn check_euler_bound(inst: &ProblemInstance, trace: &mut Vec<TraceStep>) -> Result<(), EngineError> {
    let Some(n) = inst.group.abelian_generator_count() else {
        return Ok(());
    };
    match abelian_euler_bound_check(inst, n) {
        EulerBound::Violation { chi, bound } => Err(EngineError::EulerBoundViolation { chi, bound }),
        EulerBound::Ok => {
            let chi = inst.surface.components[0].euler_characteristic();
            step(trace, nodes::EULER_BOUND, "closed b-characteristic surface meets the bound", &[
                ("chi", chi.to_string()),
                ("generators", n.to_string()),
            ]);
            Ok(())
        }
        EulerBound::NotApplicable => Ok(()),
    }
}

fn finish(trace: &mut Vec<TraceStep>, outcome: Outcome, km: Option<u8>, t: Option<u8>, b_char: BCharStatus) -> Verdict {
    let show = |x: Option<u8>| x.map(|v| v.to_string()).unwrap_or_else(|| "undefined".into());
    step(trace, nodes::OUTCOME, "terminal node", &[
        ("outcome", outcome.as_str().into()),
        ("km", show(km)),
        ("t", show(t)),
    ]);
    Verdict { outcome, km, t, b_char, trace: std::mem::take(trace) }
}

fn status_of(b: &BCharacteristic) -> BCharStatus {
    match b {
        BCharacteristic::Yes => BCharStatus::Yes,
        BCharacteristic::No(w) => BCharStatus::No(w.clone()),
    }
}

fn witness_text(w: &BWitness) -> String {
    match w {
        BWitness::LambdaPair(a, b) => format!("bands {a} and {b} have boundaries pairing to 1"),
        BWitness::MixedAnnulus(a) => format!("annulus {a} has boundary circles of different w1"),
        BWitness::ThetaOne(a) => format!("band {a} has invariant 1"),
        BWitness::TorusSummand(c) => format!("component {c} has a null-homotopic torus summand"),
        BWitness::Sphere(k) => format!("sphere {k} has F.a + a.a odd"),
        BWitness::ProjectivePlane(k) => format!("projective plane {k} has F.R + R.R odd"),
    }
}

fn is_boundary_form_witness(w: &BWitness) -> bool {
    matches!(w, BWitness::LambdaPair(..) | BWitness::TorusSummand(_))
}

fn geometric_tail(
    inst: &ProblemInstance,
    trace: &mut Vec<TraceStep>,
    success: Outcome,
    km: Option<u8>,
    t: Option<u8>,
    b_char: BCharStatus,
) -> Verdict {
    let duals = all_duals(inst);
    step(trace, nodes::DUALS, "every component needs an algebraically dual sphere", &[("value", yes_no(duals))]);
    if !duals {
        return finish(trace, Outcome::NoConclusion, None, t, b_char);
    }
    step(trace, nodes::GOOD, "the disc embedding step needs a good group", &[("value", yes_no(inst.good_group))]);
    let outcome = if inst.good_group { success } else { Outcome::NoConclusion };
    finish(trace, outcome, km, t, b_char)
}

fn primary_step(inst: &ProblemInstance, trace: &mut Vec<TraceStep>, drop_identity: bool) -> bool {
    let values = primary_values(inst, drop_identity);
    let bad = first_nonzero(&values);
    let mut vals = vec![("value", yes_no(bad.is_none()))];
    if let Some((i, j)) = bad {
        vals.push(("witness", if i == j { format!("mu(f_{i})") } else { format!("lambda(f_{i}, f_{j})") }));
    }
    if drop_identity {
        vals.push(("identity coefficient", "ignored".into()));
    }
    step(trace, nodes::PRIMARY, "pairwise intersection and self-intersection numbers", &vals);
    bad.is_none()
}

/// The regular homotopy decision procedure.
pub fn flowchart(inst: &ProblemInstance) -> Result<Verdict, EngineError> {
    validate(inst)?;
    let mut trace = Vec::new();
    if !primary_step(inst, &mut trace, false) {
        return Ok(finish(&mut trace, Outcome::NotRegHomotopicToEmbedding, None, None, BCharStatus::Undetermined));
    }
    let ft = restrict_ft(inst);
    step(&mut trace, nodes::RESTRICT, "components lacking framed algebraically dual spheres", &[(
        "components",
        format!("{ft:?}"),
    )]);
    check_euler_bound(inst, &mut trace)?;
    let b = b_char_status(inst, &ft);
    let lambda_hit = matches!(&b, BCharacteristic::No(w) if is_boundary_form_witness(w));
    let mut vals = vec![("value", yes_no(lambda_hit))];
    if let (true, BCharacteristic::No(w)) = (lambda_hit, &b) {
        vals.push(("witness", witness_text(w)));
    }
    step(&mut trace, nodes::BOUNDARY_FORM, "the band condition fails if the form is nonzero on boundaries", &vals);
    if !lambda_hit {
        let theta_hit = matches!(b, BCharacteristic::No(_));
        let mut vals = vec![("value", yes_no(theta_hit))];
        if let BCharacteristic::No(w) = &b {
            vals.push(("witness", witness_text(w)));
        }
        step(&mut trace, nodes::BAND_INVARIANT, "the band condition fails if the invariant is nonzero", &vals);
    }
    let status = status_of(&b);
    if b != BCharacteristic::Yes {
        return Ok(geometric_tail(inst, &mut trace, Outcome::RegHomotopicToEmbedding, Some(0), None, status));
    }
    let t = ft_t_value(inst, &ft)?;
    step(&mut trace, nodes::T_COUNT, "for b-characteristic F^t the invariant equals t", &[(
        "t",
        t.to_string(),
    )]);
    if t == 1 {
        return Ok(finish(&mut trace, Outcome::NotRegHomotopicToEmbedding, Some(1), Some(1), status));
    }
    Ok(geometric_tail(inst, &mut trace, Outcome::RegHomotopicToEmbedding, Some(0), Some(0), status))
}

fn kernel_case_component(inst: &ProblemInstance, ft: &[usize]) -> Option<usize> {
    ft.iter().copied().find(|&i| inst.components[i].subgroup.contains_neg_identity())
}

/// The homotopy (rather than regular homotopy) decision.
pub fn homotopy_analysis(inst: &ProblemInstance) -> Result<Verdict, EngineError> {
    validate(inst)?;
    let ft = restrict_ft(inst);
    let Some(c) = kernel_case_component(inst, &ft) else {
        let mut v = flowchart(inst)?;
        v.trace.insert(0, TraceStep {
            node: nodes::KERNEL_CASE.into(),
            reason: "without such a loop homotopy reduces to regular homotopy".into(),
            values: [("value".to_string(), "no".to_string())].into_iter().collect(),
        });
        return Ok(v);
    };
    let mut trace = Vec::new();
    step(&mut trace, nodes::KERNEL_CASE, "a cusp construction can change t on this component", &[
        ("value", "yes".into()),
        ("component", c.to_string()),
    ]);
    if !primary_step(inst, &mut trace, true) {
        return Ok(finish(&mut trace, Outcome::NotRegHomotopicToEmbedding, None, None, BCharStatus::Undetermined));
    }
    let b = b_char_status(inst, &ft);
    let t = ft_t_value(inst, &ft).ok();
    Ok(geometric_tail(inst, &mut trace, Outcome::HomotopicToEmbedding, None, t, status_of(&b)))
}

/// Adds four cusp-created double points on a qualifying component and two
/// Whitney discs for them whose boundaries cross once, flipping t.
pub fn cusp_trick(inst: &ProblemInstance) -> Result<ProblemInstance, EngineError> {
    let ft = restrict_ft(inst);
    let c = kernel_case_component(inst, &ft).ok_or(EngineError::PreconditionW1Ker)?;
    let mut out = inst.clone();
    let has_ft_points = inst.double_points.iter().any(|p| ft.contains(&p.components.0) && ft.contains(&p.components.1));
    let mut coll = match (&inst.whitney, has_ft_points) {
        (Some(w), _) => w.clone(),
        (None, false) => WhitneyCollection::empty(CollectionKind::Convenient),
        (None, true) => return Err(EngineError::MissingWhitneyData),
    };
    let width = inst.components.len();
    let convenient = coll.kind == CollectionKind::Convenient;
    let mut positions = Vec::new();
    for k in 0..2 {
        let mut interior = vec![0u64; width];
        if convenient && k == 0 {
            interior[c] = 1;
        }
        positions.push(add_finger_disc(&mut out.double_points, &mut coll, FingerDisc {
            component: c,
            eta: inst.group.identity(),
            signs: (1, 1),
            interior,
            mu_boundary: 0,
            e: 0,
        }));
    }
    if !convenient {
        crate::whitney_calc::set_boundary(&mut coll, positions[0], positions[1], 1);
    }
    out.whitney = Some(coll);
    Ok(out)
}

/// Parity of t for an embedded projective plane class in the 4-ball with
/// normal Euler number `e`, by stepping from the base values `+-2` in
/// increments of 8, each of which flips t.
pub fn rp2_euler_parity(e: i64) -> Result<u8, EngineError> {
    if e.rem_euclid(4) != 2 {
        return Err(EngineError::InvalidEulerParity(e));
    }
    let base = if e.rem_euclid(8) == 2 { 2 } else { -2 };
    let mut steps = 0u64;
    let mut x = base;
    while x != e {
        x += if e > x { 8 } else { -8 };
        steps += 1;
    }
    Ok((steps % 2) as u8)
}

/// `((sigma - S.S) / 8) mod 2` for a characteristic sphere class.
pub fn stong_t_formula(sigma_m: i64, self_int: i64) -> Result<u8, EngineError> {
    let d = sigma_m - self_int;
    if d.rem_euclid(8) != 0 {
        return Err(EngineError::NotDivisibleBy8(d));
    }
    Ok((d / 8).rem_euclid(2) as u8)
}

/// Recomputes t after validation, for callers that only need the count.
pub fn t_of_instance(inst: &ProblemInstance) -> Result<u8, EngineError> {
    let ft = restrict_ft(inst);
    ft_t_value(inst, &ft)
}

/// The band invariant of every F^t record, in catalog order.
pub fn ft_band_values(inst: &ProblemInstance) -> Result<Vec<(String, u8)>, EngineError> {
    let set: BTreeSet<usize> = restrict_ft(inst).into_iter().collect();
    ft_catalog(inst, &set)
        .records
        .iter()
        .map(|r| Ok((r.id.clone(), theta(r)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::band_theta::{BandKind, BandRecord, SurfaceComponent};
    use crate::group_core::{subgroup_closure, AbelianGroup};
    use crate::whitney_calc::WhitneyDisc;

    fn trivial() -> AmbientGroup {
        crate::group_core::cyclic_group(1)
    }

    fn comp(group: &AmbientGroup, gens: &[(GroupElem, Sign)], dual: bool, framed: bool) -> ComponentData {
        ComponentData {
            subgroup: subgroup_closure(group, gens).unwrap(),
            has_alg_dual: dual,
            dual_framed: framed,
            w2: None,
            euler: None,
        }
    }

    fn pm_pair(eta: GroupElem) -> Vec<DoublePoint> {
        vec![
            DoublePoint { id: 0, components: (0, 0), sign: 1, eta: eta.clone() },
            DoublePoint { id: 1, components: (0, 0), sign: -1, eta },
        ]
    }

    fn single_disc(interior: u64) -> WhitneyCollection {
        WhitneyCollection {
            kind: CollectionKind::Convenient,
            discs: vec![WhitneyDisc { id: 0, points: (0, 1), interior: vec![interior], mu_boundary: 0, e: 0 }],
            boundary: vec![vec![0]],
        }
    }

    fn sphere_instance(t: u64, dual: bool) -> ProblemInstance {
        let g = trivial();
        ProblemInstance {
            w_m: Character::trivial(&g),
            components: vec![comp(&g, &[], dual, false)],
            surface: SurfaceModel::new(vec![SurfaceComponent { genus: 0, orientable: true, boundary: 0 }]),
            double_points: pm_pair(GroupElem::Index(0)),
            whitney: Some(single_disc(t)),
            spheres: vec![],
            rp2: vec![],
            bands: BandCatalog::default(),
            torus_summand: vec![],
            good_group: true,
            group: g,
        }
    }

    fn torus_s3s1() -> ProblemInstance {
        let g = AmbientGroup::FGAbelian(AbelianGroup::new(vec![0]));
        let gens = [(GroupElem::Tuple(vec![1]), 1), (GroupElem::Tuple(vec![0]), 1)];
        ProblemInstance {
            w_m: Character::trivial(&g),
            components: vec![comp(&g, &gens, true, false)],
            surface: SurfaceModel::new(vec![SurfaceComponent { genus: 1, orientable: true, boundary: 0 }]),
            double_points: pm_pair(GroupElem::Tuple(vec![0])),
            whitney: Some(single_disc(1)),
            spheres: vec![],
            rp2: vec![],
            bands: BandCatalog {
                class_dim: 1,
                records: vec![BandRecord {
                    id: "S".into(),
                    kind: BandKind::Surface,
                    class: vec![1],
                    boundary_classes: vec![vec![1, 0]],
                    boundary_components: vec![0],
                    boundary_w1: vec![0],
                    core_w1: 0,
                    mu_boundary: 0,
                    boundary_arcs: 0,
                    interior: 0,
                    euler: 0,
                }],
            },
            torus_summand: vec![],
            good_group: true,
            group: g,
        }
    }

    #[test]
    fn restrict_ft_flags() {
        let mut inst = sphere_instance(0, true);
        inst.components[0].dual_framed = true;
        assert!(restrict_ft(&inst).is_empty());
        inst.components[0].dual_framed = false;
        assert_eq!(restrict_ft(&inst), vec![0]);
        inst.components[0].has_alg_dual = false;
        inst.components[0].dual_framed = true;
        assert_eq!(restrict_ft(&inst), vec![0]);
    }

    #[test]
    fn torus_example_is_not_embeddable() {
        let v = flowchart(&torus_s3s1()).unwrap();
        assert_eq!(v.outcome, Outcome::NotRegHomotopicToEmbedding);
        assert_eq!((v.km, v.t, v.b_char), (Some(1), Some(1), BCharStatus::Yes));
        assert_eq!(compute_km(&torus_s3s1()).unwrap().km, 1);
    }

    #[test]
    fn tubed_sphere_is_embeddable() {
        let mut inst = torus_s3s1();
        inst.group = trivial();
        inst.w_m = Character::trivial(&inst.group);
        inst.components = vec![comp(&inst.group, &[], true, false)];
        for p in inst.double_points.iter_mut() {
            p.eta = GroupElem::Index(0);
        }
        inst.torus_summand = vec![0];
        let v = flowchart(&inst).unwrap();
        assert_eq!(v.outcome, Outcome::RegHomotopicToEmbedding);
        assert_eq!(v.km, Some(0));
        assert!(matches!(v.b_char, BCharStatus::No(BWitness::TorusSummand(0))));
    }

    #[test]
    fn primary_obstruction_stops_first() {
        let mut inst = sphere_instance(0, true);
        inst.double_points.pop();
        inst.whitney = None;
        let v = flowchart(&inst).unwrap();
        assert_eq!(v.outcome, Outcome::NotRegHomotopicToEmbedding);
        assert_eq!(v.trace[0].node, nodes::PRIMARY);
        assert_eq!(v.trace.len(), 2);
        assert_eq!(compute_km(&inst), Err(EngineError::PrimaryObstructionNonzero));
    }

    #[test]
    fn sphere_with_dual_and_zero_t_embeds() {
        let v = flowchart(&sphere_instance(0, true)).unwrap();
        assert_eq!(v.outcome, Outcome::RegHomotopicToEmbedding);
        let v = flowchart(&sphere_instance(1, true)).unwrap();
        assert_eq!(v.outcome, Outcome::NotRegHomotopicToEmbedding);
        let v = flowchart(&sphere_instance(0, false)).unwrap();
        assert_eq!(v.outcome, Outcome::NoConclusion);
        let mut bad = sphere_instance(0, true);
        bad.good_group = false;
        assert_eq!(flowchart(&bad).unwrap().outcome, Outcome::NoConclusion);
    }

    #[test]
    fn cubic_curve_sphere_has_km_one() {
        let mut inst = sphere_instance(1, false);
        inst.components[0].euler = Some(9);
        inst.components[0].w2 = Some(1);
        assert_eq!(compute_km(&inst).unwrap().km, 1);
        assert_eq!(stong_t_formula(1, 9), Ok(1));
    }

    #[test]
    fn missing_whitney_data() {
        let mut inst = sphere_instance(0, true);
        inst.whitney = None;
        assert_eq!(compute_km(&inst), Err(EngineError::MissingWhitneyData));
        inst.double_points.clear();
        assert_eq!(compute_km(&inst).unwrap().km, 0);
    }

    #[test]
    fn validation_collects_all_issues() {
        let mut inst = sphere_instance(0, true);
        inst.double_points[0].components = (0, 3);
        inst.torus_summand = vec![5];
        let Err(EngineError::Validation(issues)) = validate(&inst) else { panic!() };
        assert!(issues.iter().any(|i| i.pointer == "/double_points/0/components"));
        assert!(issues.iter().any(|i| i.pointer == "/flags/torus_summand/0"));
    }

    fn rp2_instance() -> ProblemInstance {
        let g = trivial();
        let mut inst = sphere_instance(1, true);
        inst.components = vec![comp(&g, &[(GroupElem::Index(0), -1)], true, false)];
        inst.surface = SurfaceModel::new(vec![SurfaceComponent { genus: 1, orientable: false, boundary: 0 }]);
        inst
    }

    #[test]
    fn homotopy_case_two_embeds() {
        let inst = rp2_instance();
        let v = homotopy_analysis(&inst).unwrap();
        assert_eq!(v.outcome, Outcome::HomotopicToEmbedding);
        let mut nodual = inst.clone();
        nodual.components[0].has_alg_dual = false;
        assert_eq!(homotopy_analysis(&nodual).unwrap().outcome, Outcome::NoConclusion);
        let orient = sphere_instance(1, true);
        let h = homotopy_analysis(&orient).unwrap();
        let f = flowchart(&orient).unwrap();
        assert_eq!(h.outcome, f.outcome);
        assert_eq!(&h.trace[1..], &f.trace[..]);
    }

    #[test]
    fn cusp_trick_flips_t() {
        let inst = rp2_instance();
        let t0 = t_of_instance(&inst).unwrap();
        let once = cusp_trick(&inst).unwrap();
        assert_eq!(t_of_instance(&once).unwrap(), 1 - t0);
        let twice = cusp_trick(&once).unwrap();
        assert_eq!(t_of_instance(&twice).unwrap(), t0);
        assert!(first_nonzero(&primary_values(&once, false)).is_none());
        assert_eq!(cusp_trick(&sphere_instance(0, true)).map(|_| ()), Err(EngineError::PreconditionW1Ker));
    }

    #[test]
    fn rp2_parity_examples() {
        assert_eq!(rp2_euler_parity(2), Ok(0));
        assert_eq!(rp2_euler_parity(-2), Ok(0));
        assert_eq!(rp2_euler_parity(10), Ok(1));
        assert_eq!(rp2_euler_parity(18), Ok(0));
        assert_eq!(rp2_euler_parity(4), Err(EngineError::InvalidEulerParity(4)));
    }

    #[test]
    fn stong_examples() {
        assert_eq!(stong_t_formula(1, 9), Ok(1));
        assert_eq!(stong_t_formula(-7, 1), Ok(1));
        assert_eq!(stong_t_formula(0, 0), Ok(0));
        assert_eq!(stong_t_formula(1, 1 + 4), Err(EngineError::NotDivisibleBy8(-4)));
    }

    #[test]
    fn euler_bound_examples() {
        let torus = torus_s3s1();
        assert_eq!(abelian_euler_bound_check(&torus, 1), EulerBound::Ok);
        let mut genus2 = sphere_instance(0, true);
        genus2.surface = SurfaceModel::new(vec![SurfaceComponent { genus: 2, orientable: true, boundary: 0 }]);
        assert_eq!(abelian_euler_bound_check(&genus2, 0), EulerBound::Violation { chi: -2, bound: 0 });
        assert!(matches!(flowchart(&genus2), Err(EngineError::EulerBoundViolation { .. })));
        let mut genus_k = genus2.clone();
        genus_k.surface = SurfaceModel::new(vec![SurfaceComponent { genus: 3, orientable: true, boundary: 0 }]);
        assert_eq!(abelian_euler_bound_check(&genus_k, 3), EulerBound::Ok);
    }
}
