//! The band invariant, characteristic-class tests and cut-curve selection.
//!
//! All homology is with `GF(2)` coefficients and every count is stored
//! already reduced mod 2.

use std::collections::VecDeque;

use thiserror::Error;

use crate::whitney_calc::{
    add_finger_disc, set_boundary, t_alt, CollectionKind, DoublePoint, FingerDisc, WhitneyCollection, WhitneyError,
};
use crate::group_core::GroupElem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BandError {
    #[error("band {0}: annulus with exactly one orientation-reversing boundary; km = 0 follows directly")]
    MixedW1Annulus(String),
    #[error("band {id}: fails the orientation condition w1(M)(C) + w1(S)(dB) = 0")]
    NotAdmissible { id: String },
    #[error("band {id}: Moebius band on an orientation-reversing boundary curve")]
    MoebiusOnReversingCurve { id: String },
    #[error("band {id}: malformed record ({reason})")]
    Malformed { id: String, reason: String },
    #[error("bands {first} and {second} share a class but have different theta")]
    Conflict { class: Vec<u8>, first: String, second: String },
    #[error("intersection form is nonzero on boundaries of {0} and {1}")]
    NotLinearizable(String, String),
    #[error("band {0}: theta is not the linear extension of the other records")]
    SpanInconsistent(String),
    #[error("number of boundary-parity labels does not match the surface")]
    Inconsistent,
    #[error("whitney data: {0}")]
    Whitney(#[from] WhitneyError),
    #[error("finger move changed t by {got}, expected theta = {expected}")]
    FingerMoveMismatch { got: u8, expected: u8 },
}

/// One connected component of the surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurfaceComponent {
    /// Genus when orientable, number of cross-caps otherwise.
    pub genus: usize,
    pub orientable: bool,
    pub boundary: usize,
}

impl SurfaceComponent {
    pub fn euler_characteristic(&self) -> i64 {
        let closed = if self.orientable { 2 - 2 * self.genus as i64 } else { 2 - self.genus as i64 };
        closed - self.boundary as i64
    }

    /// Rank of the `GF(2)` first homology basis used by [`SurfaceModel`].
    pub fn basis_len(&self) -> usize {
        (if self.orientable { 2 * self.genus } else { self.genus }) + self.boundary
    }
}

/// A surface with its mod 2 intersection form and first Stiefel-Whitney class.
///
/// Basis per component, concatenated in component order: `a_1, b_1, ...,
/// a_g, b_g` (orientable) or `e_1, ..., e_k` (cross-caps), followed by one
/// class per boundary circle with a zero row in the form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceModel {
    pub components: Vec<SurfaceComponent>,
    pub form: Vec<Vec<u8>>,
    pub w1: Vec<u8>,
    offsets: Vec<usize>,
}

impl SurfaceModel {
    pub fn new(components: Vec<SurfaceComponent>) -> SurfaceModel {
        let mut offsets = Vec::new();
        let mut n = 0;
        for c in &components {
            offsets.push(n);
            n += c.basis_len();
        }
        let mut form = vec![vec![0u8; n]; n];
        let mut w1 = vec![0u8; n];
        for (c, &off) in components.iter().zip(&offsets) {
            if c.orientable {
                for i in 0..c.genus {
                    form[off + 2 * i][off + 2 * i + 1] = 1;
                    form[off + 2 * i + 1][off + 2 * i] = 1;
                }
            } else {
                for i in 0..c.genus {
                    form[off + i][off + i] = 1;
                    w1[off + i] = 1;
                }
            }
        }
        SurfaceModel { components, form, w1, offsets }
    }

    pub fn dim(&self) -> usize {
        self.w1.len()
    }

    /// Global basis index of local class `local` on component `comp`.
    pub fn basis_index(&self, comp: usize, local: usize) -> usize {
        self.offsets[comp] + local
    }

    /// The global basis range belonging to component `comp`.
    pub fn component_range(&self, comp: usize) -> std::ops::Range<usize> {
        self.offsets[comp]..self.offsets[comp] + self.components[comp].basis_len()
    }

    pub fn lambda(&self, x: &[u8], y: &[u8]) -> u8 {
        let mut s = 0u8;
        for (i, &xi) in x.iter().enumerate() {
            if xi & 1 == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                s ^= self.form[i][j] & yj & 1;
            }
        }
        s
    }

    pub fn w1_of(&self, x: &[u8]) -> u8 {
        x.iter().zip(&self.w1).fold(0, |s, (&a, &b)| s ^ (a & b & 1))
    }
}

/// Sum over `GF(2)`, treating missing trailing entries as zero.
pub fn gf2_add(x: &[u8], y: &[u8]) -> Vec<u8> {
    let n = x.len().max(y.len());
    let at = |v: &[u8], i: usize| v.get(i).copied().unwrap_or(0);
    (0..n).map(|i| (at(x, i) ^ at(y, i)) & 1).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BandKind {
    Annulus,
    Moebius,
    /// Any other compact surface standing in for a band of the same class.
    Surface,
}

/// A declared generator of the band classes, with the four ingredients of
/// its invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BandRecord {
    pub id: String,
    pub kind: BandKind,
    /// Class in the relative second homology, over the catalog's named basis.
    pub class: Vec<u8>,
    /// First homology class of each boundary circle.
    pub boundary_classes: Vec<Vec<u8>>,
    /// Surface component carrying each boundary circle.
    pub boundary_components: Vec<usize>,
    /// `w1` of the surface on each boundary circle.
    pub boundary_w1: Vec<u8>,
    /// `w1` of the ambient manifold on the core.
    pub core_w1: u8,
    pub mu_boundary: u8,
    pub boundary_arcs: u8,
    pub interior: u8,
    pub euler: u8,
}

impl BandRecord {
    /// Total boundary class.
    pub fn boundary_class(&self) -> Vec<u8> {
        let n = self.boundary_classes.first().map(|c| c.len()).unwrap_or(0);
        self.boundary_classes
            .iter()
            .fold(vec![0; n], |acc, c| gf2_add(&acc, c))
    }

    pub fn check_shape(&self, surface_dim: usize, class_dim: usize) -> Result<(), BandError> {
        let bad = |reason: &str| Err(BandError::Malformed { id: self.id.clone(), reason: reason.into() });
        let k = self.boundary_classes.len();
        match self.kind {
            BandKind::Annulus if k != 2 => return bad("an annulus has two boundary circles"),
            BandKind::Moebius if k != 1 => return bad("a Moebius band has one boundary circle"),
            _ => {}
        }
        if self.boundary_w1.len() != k || self.boundary_components.len() != k {
            return bad("boundary lists differ in length");
        }
        if self.class.len() != class_dim {
            return bad("class has the wrong dimension");
        }
        if self.boundary_classes.iter().any(|c| c.len() != surface_dim) {
            return bad("boundary class has the wrong dimension");
        }
        let bits = [self.core_w1, self.mu_boundary, self.boundary_arcs, self.interior, self.euler];
        if bits.iter().chain(&self.boundary_w1).chain(self.class.iter()).any(|&b| b > 1)
            || self.boundary_classes.iter().flatten().any(|&b| b > 1)
        {
            return bad("parity field outside {0, 1}");
        }
        Ok(())
    }

    /// The orientation condition on the core and boundary.
    pub fn check_admissible(&self) -> Result<(), BandError> {
        if self.kind == BandKind::Moebius && self.boundary_w1[0] == 1 {
            return Err(BandError::MoebiusOnReversingCurve { id: self.id.clone() });
        }
        let s = self.boundary_w1.iter().fold(self.core_w1, |a, &b| a ^ b);
        if s & 1 != 0 {
            return Err(BandError::NotAdmissible { id: self.id.clone() });
        }
        Ok(())
    }
}

/// The declared generators of the band classes over a relative homology basis.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BandCatalog {
    pub class_dim: usize,
    pub records: Vec<BandRecord>,
}

/// `mu(dB) + |dB . A| + |Int B . F| + e(B)` mod 2.
pub fn theta(record: &BandRecord) -> Result<u8, BandError> {
    record.check_admissible()?;
    if record.kind == BandKind::Annulus && record.boundary_w1[0] != record.boundary_w1[1] {
        return Err(BandError::MixedW1Annulus(record.id.clone()));
    }
    Ok((record.mu_boundary ^ record.boundary_arcs ^ record.interior ^ record.euler) & 1)
}

/// The first pair of records whose boundaries pair nontrivially, if any.
/// Includes each record against itself.
pub fn lambda_boundary_witness(catalog: &BandCatalog, surface: &SurfaceModel) -> Option<(usize, usize)> {
    let bd: Vec<Vec<u8>> = catalog.records.iter().map(|r| r.boundary_class()).collect();
    for i in 0..bd.len() {
        for j in i..bd.len() {
            if surface.lambda(&bd[i], &bd[j]) == 1 {
                return Some((i, j));
            }
        }
    }
    None
}

/// Whether the intersection form vanishes on all catalog boundaries.
pub fn lambda_boundary_check(catalog: &BandCatalog, surface: &SurfaceModel) -> bool {
    lambda_boundary_witness(catalog, surface).is_none()
}

/// Records with equal class must have equal invariant.
pub fn validate_theta_well_defined(catalog: &BandCatalog) -> Result<(), BandError> {
    let values: Vec<u8> = catalog.records.iter().map(theta).collect::<Result<_, _>>()?;
    for i in 0..catalog.records.len() {
        for j in i + 1..catalog.records.len() {
            let (a, b) = (&catalog.records[i], &catalog.records[j]);
            if a.class == b.class && values[i] != values[j] {
                return Err(BandError::Conflict {
                    class: a.class.clone(),
                    first: a.id.clone(),
                    second: b.id.clone(),
                });
            }
        }
    }
    Ok(())
}

/// A linear functional on the span of catalog classes, kept as a reduced
/// echelon basis with the value of each basis vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanFunctional {
    basis: Vec<(usize, Vec<u8>, u8)>,
    dim: usize,
}

impl SpanFunctional {
    /// Value on `v`, or `None` when `v` is outside the span.
    pub fn eval(&self, v: &[u8]) -> Option<u8> {
        let (rest, val) = self.reduce(v);
        rest.iter().all(|&x| x == 0).then_some(val)
    }

    fn reduce(&self, v: &[u8]) -> (Vec<u8>, u8) {
        let mut w: Vec<u8> = v.iter().map(|x| x & 1).collect();
        let mut val = 0;
        for (p, b, t) in &self.basis {
            if w[*p] == 1 {
                w = gf2_add(&w, b);
                val ^= t;
            }
        }
        (w, val)
    }

    pub fn is_zero(&self) -> bool {
        self.basis.iter().all(|(_, _, t)| *t == 0)
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// Extends record values linearly over the span of their classes.
pub fn theta_on_span(catalog: &BandCatalog, surface: &SurfaceModel) -> Result<SpanFunctional, BandError> {
    if let Some((i, j)) = lambda_boundary_witness(catalog, surface) {
        return Err(BandError::NotLinearizable(
            catalog.records[i].id.clone(),
            catalog.records[j].id.clone(),
        ));
    }
    validate_theta_well_defined(catalog)?;
    let mut f = SpanFunctional { basis: Vec::new(), dim: catalog.class_dim };
    for r in &catalog.records {
        let t = theta(r)?;
        let (w, val) = f.reduce(&r.class);
        match w.iter().position(|&x| x == 1) {
            Some(p) => {
                let t = t ^ val;
                for (_, b, bt) in f.basis.iter_mut() {
                    if b[p] == 1 {
                        *b = gf2_add(b, &w);
                        *bt ^= t;
                    }
                }
                f.basis.push((p, w, t));
            }
            None if val != t => return Err(BandError::SpanInconsistent(r.id.clone())),
            None => {}
        }
    }
    Ok(f)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BWitness {
    /// Boundaries of these records pair nontrivially.
    LambdaPair(String, String),
    /// Annulus whose boundary circles disagree on `w1`.
    MixedAnnulus(String),
    /// A record with invariant one.
    ThetaOne(String),
    /// A declared torus summand with trivial fundamental group image.
    TorusSummand(usize),
    /// Declared sphere with `F.a != a.a` mod 2.
    Sphere(usize),
    /// Declared projective plane with `F.R != R.R` mod 2.
    ProjectivePlane(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BCharacteristic {
    Yes,
    No(BWitness),
}

/// Decides the band condition: the form vanishes on boundaries and the
/// invariant vanishes on the span.
pub fn is_b_characteristic(catalog: &BandCatalog, surface: &SurfaceModel) -> BCharacteristic {
    if let Some((i, j)) = lambda_boundary_witness(catalog, surface) {
        return BCharacteristic::No(BWitness::LambdaPair(
            catalog.records[i].id.clone(),
            catalog.records[j].id.clone(),
        ));
    }
    for r in &catalog.records {
        match theta(r) {
            Ok(1) => return BCharacteristic::No(BWitness::ThetaOne(r.id.clone())),
            Err(BandError::MixedW1Annulus(id)) => return BCharacteristic::No(BWitness::MixedAnnulus(id)),
            _ => {}
        }
    }
    BCharacteristic::Yes
}

/// `F.a = a.a` mod 2 for every declared sphere `(F.a, a.a)`.
pub fn is_s_characteristic(spheres: &[(u8, u8)]) -> bool {
    spheres.iter().all(|&(fa, aa)| (fa ^ aa) & 1 == 0)
}

/// `F.R = R.R` mod 2 for every declared projective plane `(F.R, R.R)`.
pub fn is_r_characteristic(rp2s: &[(u8, u8)]) -> bool {
    first_congruence_failure(rp2s).is_none()
}

/// Index of the first `(F.x, x.x)` pair with odd sum.
pub fn first_congruence_failure(list: &[(u8, u8)]) -> Option<usize> {
    list.iter().position(|&(a, b)| (a ^ b) & 1 == 1)
}

/// A closed surface viewed as a band record: no boundary, its intersection
/// with `F` as the interior count and its self-intersection as Euler number.
pub fn closed_surface_record(id: &str, class: Vec<u8>, f_dot: u8, self_dot: u8) -> BandRecord {
    BandRecord {
        id: id.into(),
        kind: BandKind::Surface,
        class,
        boundary_classes: Vec::new(),
        boundary_components: Vec::new(),
        boundary_w1: Vec::new(),
        core_w1: 0,
        mu_boundary: 0,
        boundary_arcs: 0,
        interior: f_dot & 1,
        euler: self_dot & 1,
    }
}

/// Formal union of two records: classes and counts add, and the boundary
/// crossings between them become boundary self-intersections of the union.
pub fn formal_union(a: &BandRecord, b: &BandRecord, surface: &SurfaceModel) -> BandRecord {
    let cross = surface.lambda(&a.boundary_class(), &b.boundary_class());
    let mut boundary_classes = a.boundary_classes.clone();
    boundary_classes.extend(b.boundary_classes.iter().cloned());
    let mut boundary_components = a.boundary_components.clone();
    boundary_components.extend(&b.boundary_components);
    let mut boundary_w1 = a.boundary_w1.clone();
    boundary_w1.extend(&b.boundary_w1);
    BandRecord {
        id: format!("{}+{}", a.id, b.id),
        kind: BandKind::Surface,
        class: gf2_add(&a.class, &b.class),
        boundary_classes,
        boundary_components,
        boundary_w1,
        core_w1: a.core_w1 ^ b.core_w1,
        mu_boundary: a.mu_boundary ^ b.mu_boundary ^ cross,
        boundary_arcs: a.boundary_arcs ^ b.boundary_arcs,
        interior: a.interior ^ b.interior,
        euler: a.euler ^ b.euler,
    }
}

/// Result of finger moves along band fibres.
#[derive(Debug, Clone)]
pub struct FingerMoveOutcome {
    pub points: Vec<DoublePoint>,
    pub collection: WhitneyCollection,
    pub delta_t: u8,
}

/// Finger moves along the fibres of several bands at once.
///
/// Each band contributes a cancelling pair of double points on its first
/// boundary component (the first selected component for a closed record)
/// and a disc carrying the band's counts; its arc count
/// becomes a boundary crossing with the first pre-existing disc (or a
/// boundary self-intersection when there is none), and discs from
/// different bands cross along their boundaries as their boundary classes
/// pair. The change in t is checked against the invariant of the union.
pub fn band_fibre_finger_moves(
    points: &[DoublePoint],
    components: &[usize],
    collection: &WhitneyCollection,
    bands: &[&BandRecord],
    surface: &SurfaceModel,
    eta: GroupElem,
) -> Result<FingerMoveOutcome, BandError> {
    let mut expected = 0u8;
    for b in bands {
        expected ^= theta(b)?;
    }
    for i in 0..bands.len() {
        for j in i + 1..bands.len() {
            expected ^= surface.lambda(&bands[i].boundary_class(), &bands[j].boundary_class());
        }
    }
    let before = t_alt(points, components, collection)?;
    let mut pts = points.to_vec();
    let mut coll = collection.clone();
    let width = surface.components.len();
    let had_discs = !collection.discs.is_empty();
    let mut added = Vec::new();
    for b in bands {
        let comp = b
            .boundary_components
            .first()
            .or(components.first())
            .copied()
            .ok_or_else(|| BandError::Malformed { id: b.id.clone(), reason: "no component to host the disc".into() })?;
        let mut interior = vec![0u64; width];
        interior[comp] = b.interior as u64;
        let arcs_as_self = if had_discs { 0 } else { b.boundary_arcs };
        let pos = add_finger_disc(
            &mut pts,
            &mut coll,
            FingerDisc {
                component: comp,
                eta: eta.clone(),
                signs: (1, -1),
                interior,
                mu_boundary: b.mu_boundary ^ arcs_as_self,
                e: b.euler as i64,
            },
        );
        if had_discs && b.boundary_arcs == 1 {
            let old = coll.boundary[0][pos];
            set_boundary(&mut coll, 0, pos, old + 1);
        }
        added.push(pos);
    }
    for i in 0..bands.len() {
        for j in i + 1..bands.len() {
            let c = surface.lambda(&bands[i].boundary_class(), &bands[j].boundary_class());
            set_boundary(&mut coll, added[i], added[j], c as u64);
        }
    }
    if !coll.is_convenient() {
        coll.kind = CollectionKind::Weak;
    }
    let after = t_alt(&pts, components, &coll)?;
    let delta_t = before ^ after;
    if delta_t != expected {
        return Err(BandError::FingerMoveMismatch { got: delta_t, expected });
    }
    Ok(FingerMoveOutcome { points: pts, collection: coll, delta_t })
}

/// Finger move along the fibre of a single band.
pub fn band_fibre_finger_move(
    points: &[DoublePoint],
    components: &[usize],
    collection: &WhitneyCollection,
    band: &BandRecord,
    surface: &SurfaceModel,
    eta: GroupElem,
) -> Result<FingerMoveOutcome, BandError> {
    band_fibre_finger_moves(points, components, collection, &[band], surface, eta)
}

/// Labels cut-graph nodes by crossing parity from the first node of each
/// connected piece and selects the even ones.
///
/// Edges are `(u, v, parity)`. A cycle of odd total parity means the cut
/// curves are not null-homologous, reported as `Inconsistent`.
pub fn split_cut_components(nodes: usize, edges: &[(usize, usize, u8)]) -> Result<Vec<bool>, BandError> {
    let mut adj: Vec<Vec<(usize, u8)>> = vec![Vec::new(); nodes];
    for &(u, v, p) in edges {
        if u >= nodes || v >= nodes {
            return Err(BandError::Inconsistent);
        }
        adj[u].push((v, p & 1));
        adj[v].push((u, p & 1));
    }
    let mut label: Vec<Option<u8>> = vec![None; nodes];
    for start in 0..nodes {
        if label[start].is_some() {
            continue;
        }
        label[start] = Some(0);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let lu = label[u].expect("labelled");
            for &(v, p) in &adj[u] {
                match label[v] {
                    None => {
                        label[v] = Some(lu ^ p);
                        queue.push_back(v);
                    }
                    Some(lv) if lv != lu ^ p => return Err(BandError::Inconsistent),
                    Some(_) => {}
                }
            }
        }
    }
    Ok(label.into_iter().map(|l| l == Some(0)).collect())
}
