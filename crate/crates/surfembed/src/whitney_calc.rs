//! Double points, Whitney discs and the t-count bookkeeping.
//!
//! Intersections are stored as counts only; every invariant computed here
//! is a parity or a signed sum of those counts.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::gamma_algebra::{reduce, GammaGroup, OrderTag};
use crate::group_core::{GroupElem, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WhitneyError {
    #[error("double points lie on different component pairs")]
    MixedComponents,
    #[error("the signed points do not cancel in the intersection group")]
    NoPairing,
    #[error("collection is not convenient (disc {0:?})")]
    NotConvenient(Option<usize>),
    #[error("double point {0} is not paired exactly once")]
    UnpairedPoints(usize),
    #[error("disc {0} pairs a point outside the selected components")]
    ForeignPoint(usize),
    #[error("disc {0} has no interior intersection with component {1} to transfer")]
    NothingToTransfer(usize, usize),
    #[error("no disc with id {0}")]
    UnknownDisc(usize),
    #[error("disc {0} pairs a point with itself")]
    DegenerateDisc(usize),
    #[error("boundary matrix is not square and symmetric of the collection size")]
    BadBoundaryMatrix,
}

/// A transverse double point between components `i` and `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoublePoint {
    pub id: usize,
    pub components: (usize, usize),
    pub sign: Sign,
    pub eta: GroupElem,
}

/// Combinatorial data of one Whitney disc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WhitneyDisc {
    pub id: usize,
    pub points: (usize, usize),
    /// Interior intersection count with each surface component.
    pub interior: Vec<u64>,
    /// Boundary self-intersections, mod 2.
    pub mu_boundary: u8,
    /// Twisting relative to the Whitney framing.
    pub e: i64,
}

impl WhitneyDisc {
    fn is_convenient(&self) -> bool {
        self.e == 0 && self.mu_boundary.is_multiple_of(2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CollectionKind {
    Convenient,
    Weak,
}

/// An ordered collection of Whitney discs with the symmetric matrix of
/// pairwise boundary intersection counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WhitneyCollection {
    pub kind: CollectionKind,
    pub discs: Vec<WhitneyDisc>,
    pub boundary: Vec<Vec<u64>>,
}

impl WhitneyCollection {
    pub fn empty(kind: CollectionKind) -> Self {
        WhitneyCollection { kind, discs: Vec::new(), boundary: Vec::new() }
    }

    pub fn check_shape(&self) -> Result<(), WhitneyError> {
        let n = self.discs.len();
        if self.boundary.len() != n || self.boundary.iter().any(|r| r.len() != n) {
            return Err(WhitneyError::BadBoundaryMatrix);
        }
        for i in 0..n {
            for j in 0..n {
                if self.boundary[i][j] != self.boundary[j][i] {
                    return Err(WhitneyError::BadBoundaryMatrix);
                }
            }
        }
        for d in &self.discs {
            if d.points.0 == d.points.1 {
                return Err(WhitneyError::DegenerateDisc(d.id));
            }
        }
        Ok(())
    }

    /// Whether every disc and the boundary matrix meet the convenient conditions.
    pub fn is_convenient(&self) -> bool {
        self.discs.iter().all(|d| d.is_convenient())
            && self.boundary.iter().enumerate().all(|(i, r)| {
                r.iter().enumerate().all(|(j, &c)| i == j || c % 2 == 0)
            })
    }

    fn push_disc(&mut self, disc: WhitneyDisc) -> usize {
        for r in self.boundary.iter_mut() {
            r.push(0);
        }
        self.discs.push(disc);
        self.boundary.push(vec![0; self.discs.len()]);
        self.discs.len() - 1
    }

    fn position(&self, id: usize) -> Result<usize, WhitneyError> {
        self.discs
            .iter()
            .position(|d| d.id == id)
            .ok_or(WhitneyError::UnknownDisc(id))
    }

    fn next_id(&self) -> usize {
        self.discs.iter().map(|d| d.id + 1).max().unwrap_or(0)
    }
}

fn in_subset(p: &DoublePoint, components: &BTreeSet<usize>) -> bool {
    components.contains(&p.components.0) && components.contains(&p.components.1)
}

/// Checks that the collection pairs exactly the double points lying within `components`.
pub fn check_pairs(
    points: &[DoublePoint],
    components: &[usize],
    collection: &WhitneyCollection,
) -> Result<(), WhitneyError> {
    collection.check_shape()?;
    let comps: BTreeSet<usize> = components.iter().copied().collect();
    let by_id: BTreeMap<usize, &DoublePoint> = points.iter().map(|p| (p.id, p)).collect();
    let mut used: BTreeMap<usize, usize> = BTreeMap::new();
    for d in &collection.discs {
        for pid in [d.points.0, d.points.1] {
            match by_id.get(&pid) {
                Some(p) if in_subset(p, &comps) => *used.entry(pid).or_default() += 1,
                Some(_) => return Err(WhitneyError::ForeignPoint(d.id)),
                None => return Err(WhitneyError::UnpairedPoints(pid)),
            }
        }
    }
    for p in points.iter().filter(|p| in_subset(p, &comps)) {
        if used.get(&p.id) != Some(&1) {
            return Err(WhitneyError::UnpairedPoints(p.id));
        }
    }
    if let Some((&pid, _)) = used.iter().find(|(_, &c)| c != 1) {
        return Err(WhitneyError::UnpairedPoints(pid));
    }
    Ok(())
}

/// Discs whose paired points both lie within `components`.
pub fn restrict_collection(
    points: &[DoublePoint],
    components: &[usize],
    collection: &WhitneyCollection,
) -> WhitneyCollection {
    let comps: BTreeSet<usize> = components.iter().copied().collect();
    let by_id: BTreeMap<usize, &DoublePoint> = points.iter().map(|p| (p.id, p)).collect();
    let keep: Vec<usize> = collection
        .discs
        .iter()
        .enumerate()
        .filter(|(_, d)| {
            [d.points.0, d.points.1]
                .iter()
                .all(|pid| by_id.get(pid).is_some_and(|p| in_subset(p, &comps)))
        })
        .map(|(i, _)| i)
        .collect();
    WhitneyCollection {
        kind: collection.kind,
        discs: keep.iter().map(|&i| collection.discs[i].clone()).collect(),
        boundary: keep
            .iter()
            .map(|&i| keep.iter().map(|&j| collection.boundary[i][j]).collect())
            .collect(),
    }
}

/// Pairs points whose signed classes cancel in `gamma`.
///
/// Within each orbit, points are bucketed by effective sign and matched in id
/// order; on order-two orbits any two points cancel.
pub fn find_pairing(points: &[DoublePoint], gamma: &GammaGroup) -> Result<Vec<(usize, usize)>, WhitneyError> {
    if let Some(first) = points.first() {
        if points.iter().any(|p| p.components != first.components) {
            return Err(WhitneyError::MixedComponents);
        }
    }
    let list: Vec<(Sign, GroupElem)> = points.iter().map(|p| (p.sign, p.eta.clone())).collect();
    if !reduce(&list, gamma).is_zero() {
        return Err(WhitneyError::NoPairing);
    }
    let mut sorted: Vec<&DoublePoint> = points.iter().collect();
    sorted.sort_by_key(|p| p.id);
    let mut buckets: BTreeMap<(GroupElem, Sign), Vec<usize>> = BTreeMap::new();
    for p in sorted {
        let loc = gamma.locate(&p.eta);
        let key = match loc.tag {
            OrderTag::Two => 1,
            OrderTag::Infinite => p.sign * loc.section_sign,
        };
        buckets.entry((loc.rep, key)).or_default().push(p.id);
    }
    let mut pairs = Vec::new();
    let reps: BTreeSet<GroupElem> = buckets.keys().map(|(r, _)| r.clone()).collect();
    for rep in reps {
        let plus = buckets.remove(&(rep.clone(), 1)).unwrap_or_default();
        let minus = buckets.remove(&(rep.clone(), -1)).unwrap_or_default();
        if minus.is_empty() || plus.is_empty() {
            // Order-two orbit: any two points cancel.
            let all = if plus.is_empty() { minus } else { plus };
            for c in all.chunks(2) {
                pairs.push((c[0], c[1]));
            }
        } else {
            pairs.extend(plus.into_iter().zip(minus));
        }
    }
    pairs.sort();
    Ok(pairs)
}

/// Interior intersections with the selected components, mod 2.
pub fn t_count(
    points: &[DoublePoint],
    components: &[usize],
    collection: &WhitneyCollection,
) -> Result<u8, WhitneyError> {
    if collection.kind != CollectionKind::Convenient {
        return Err(WhitneyError::NotConvenient(None));
    }
    if let Some(d) = collection.discs.iter().find(|d| !d.is_convenient()) {
        return Err(WhitneyError::NotConvenient(Some(d.id)));
    }
    if !collection.is_convenient() {
        return Err(WhitneyError::NotConvenient(None));
    }
    check_pairs(points, components, collection)?;
    Ok(interior_sum(components, collection))
}

fn interior_sum(components: &[usize], collection: &WhitneyCollection) -> u8 {
    let s: u64 = collection
        .discs
        .iter()
        .flat_map(|d| components.iter().map(move |&i| d.interior.get(i).copied().unwrap_or(0)))
        .sum();
    (s % 2) as u8
}

/// Per-disc correction terms: twisting, boundary self-intersections and
/// intersections with later disc boundaries.
fn correction(collection: &WhitneyCollection, l: usize) -> u64 {
    let d = &collection.discs[l];
    let later: u64 = (l + 1..collection.discs.len()).map(|k| collection.boundary[l][k]).sum();
    d.e.rem_euclid(2) as u64 + d.mu_boundary as u64 + later
}

/// t-count of a possibly weak collection, with framing and boundary terms.
pub fn t_alt(
    points: &[DoublePoint],
    components: &[usize],
    collection: &WhitneyCollection,
) -> Result<u8, WhitneyError> {
    check_pairs(points, components, collection)?;
    let extra: u64 = (0..collection.discs.len()).map(|l| correction(collection, l)).sum();
    Ok(((interior_sum(components, collection) as u64 + extra) % 2) as u8)
}

/// Trades every framing and boundary defect for interior intersections.
///
/// Each disc gains its correction term, reduced mod 2, on the component of
/// its first paired point; twisting, boundary self-intersections and the
/// boundary matrix are then cleared.
pub fn to_convenient(
    points: &[DoublePoint],
    components: &[usize],
    collection: &WhitneyCollection,
) -> Result<WhitneyCollection, WhitneyError> {
    check_pairs(points, components, collection)?;
    let by_id: BTreeMap<usize, &DoublePoint> = points.iter().map(|p| (p.id, p)).collect();
    let n = collection.discs.len();
    let mut out = collection.clone();
    for l in 0..n {
        let c = correction(collection, l) % 2;
        let comp = by_id[&collection.discs[l].points.0].components.0;
        let d = &mut out.discs[l];
        if d.interior.len() <= comp {
            d.interior.resize(comp + 1, 0);
        }
        d.interior[comp] += c;
        d.e = 0;
        d.mu_boundary = 0;
    }
    out.boundary = vec![vec![0; n]; n];
    out.kind = CollectionKind::Convenient;
    Ok(out)
}

/// Moves one interior intersection with `component` off each of two discs,
/// adding three discs that meet the component twice each and pair six new
/// cancelling double points.
pub fn transfer_move(
    points: &[DoublePoint],
    collection: &WhitneyCollection,
    w1: usize,
    w2: usize,
    component: usize,
) -> Result<(Vec<DoublePoint>, WhitneyCollection), WhitneyError> {
    let (i1, i2) = (collection.position(w1)?, collection.position(w2)?);
    for &(i, id) in &[(i1, w1), (i2, w2)] {
        if collection.discs[i].interior.get(component).copied().unwrap_or(0) == 0 {
            return Err(WhitneyError::NothingToTransfer(id, component));
        }
    }
    if i1 == i2 && collection.discs[i1].interior[component] < 2 {
        return Err(WhitneyError::NothingToTransfer(w1, component));
    }
    let mut out = collection.clone();
    out.discs[i1].interior[component] -= 1;
    out.discs[i2].interior[component] -= 1;
    let mut pts = points.to_vec();
    let mut next_point = pts.iter().map(|p| p.id + 1).max().unwrap_or(0);
    let width = collection
        .discs
        .iter()
        .map(|d| d.interior.len())
        .max()
        .unwrap_or(0)
        .max(component + 1);
    let eta = pts
        .iter()
        .find(|p| p.components == (component, component))
        .map(|p| p.eta.clone());
    for _ in 0..3 {
        let ids = (next_point, next_point + 1);
        next_point += 2;
        for (id, sign) in [(ids.0, 1), (ids.1, -1)] {
            pts.push(DoublePoint {
                id,
                components: (component, component),
                sign,
                eta: eta.clone().unwrap_or_else(|| identity_like(points)),
            });
        }
        let mut interior = vec![0; width];
        interior[component] = 2;
        let id = out.next_id();
        out.push_disc(WhitneyDisc { id, points: ids, interior, mu_boundary: 0, e: 0 });
    }
    Ok((pts, out))
}

fn identity_like(points: &[DoublePoint]) -> GroupElem {
    match points.first().map(|p| &p.eta) {
        Some(GroupElem::Tuple(v)) => GroupElem::Tuple(vec![0; v.len()]),
        _ => GroupElem::Index(0),
    }
}

/// A cancelling pair of double points on one component together with the
/// disc pairing them.
#[derive(Debug, Clone)]
pub struct FingerDisc {
    pub component: usize,
    pub eta: GroupElem,
    pub signs: (Sign, Sign),
    pub interior: Vec<u64>,
    pub mu_boundary: u8,
    pub e: i64,
}

/// Appends the points and disc of `finger`; returns the new disc's position.
pub fn add_finger_disc(
    points: &mut Vec<DoublePoint>,
    collection: &mut WhitneyCollection,
    finger: FingerDisc,
) -> usize {
    let next_point = points.iter().map(|p| p.id + 1).max().unwrap_or(0);
    for (k, s) in [finger.signs.0, finger.signs.1].into_iter().enumerate() {
        points.push(DoublePoint {
            id: next_point + k,
            components: (finger.component, finger.component),
            sign: s,
            eta: finger.eta.clone(),
        });
    }
    let id = collection.next_id();
    collection.push_disc(WhitneyDisc {
        id,
        points: (next_point, next_point + 1),
        interior: finger.interior,
        mu_boundary: finger.mu_boundary,
        e: finger.e,
    })
}

/// Sets the symmetric boundary count between discs at positions `a` and `b`.
pub fn set_boundary(collection: &mut WhitneyCollection, a: usize, b: usize, count: u64) {
    collection.boundary[a][b] = count;
    collection.boundary[b][a] = count;
}
