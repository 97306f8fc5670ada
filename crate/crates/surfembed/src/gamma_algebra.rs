//! Orbit decompositions of the intersection-number groups.
//!
//! For a pair of signed subgroups `S_f, S_g` the group ring `Z[G]` is divided
//! by `gamma ~ eps_a eps_b w(b) * a gamma b`, and when pairing a component
//! with itself also by `gamma ~ w(gamma) * gamma^{-1}`. Each orbit of the
//! signed action contributes `Z` or `Z/2`.

use std::collections::{BTreeMap, VecDeque};

use thiserror::Error;

use crate::group_core::{sign_to_bit, AmbientGroup, Character, GroupElem, Sign, SignedSubgroup};
use crate::lattice::Lattice;
use crate::snf;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GammaError {
    #[error("lambda_1 = {lambda1}, mu_1 = {mu1}, e = {e} violates lambda_1 = 2 mu_1 + e")]
    InconsistentEulerData { lambda1: i64, mu1: i64, e: i64 },
    #[error("exactly one of lambda_1, mu_1, e may be unknown")]
    Underdetermined,
    #[error("Euler number {e} has the wrong parity for w2 = {w2}")]
    ParityMismatch { e: i64, w2: u8 },
    #[error("the oracle needs a finite ambient group")]
    AmbientNotFinite,
    #[error("self pairing requires S_g = S_f")]
    SelfPairingMismatch,
}

/// Everything that determines one intersection-number group.
#[derive(Debug, Clone)]
pub struct PairingContext {
    pub ambient: AmbientGroup,
    pub w_m: Character,
    pub s_f: SignedSubgroup,
    pub s_g: SignedSubgroup,
    pub self_pairing: bool,
}

impl PairingContext {
    pub fn pair(ambient: AmbientGroup, w_m: Character, s_f: SignedSubgroup, s_g: SignedSubgroup) -> Self {
        PairingContext { ambient, w_m, s_f, s_g, self_pairing: false }
    }

    pub fn self_pair(ambient: AmbientGroup, w_m: Character, s_f: SignedSubgroup) -> Self {
        PairingContext { ambient, w_m, s_g: s_f.clone(), s_f, self_pairing: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OrderTag {
    Infinite,
    Two,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitInfo {
    pub rep: GroupElem,
    pub tag: OrderTag,
}

/// Where a group element sits: its orbit, the orbit's tag, and the sign
/// relating the element to the orbit representative (`gamma = sign * rep`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Located {
    pub rep: GroupElem,
    pub tag: OrderTag,
    pub section_sign: Sign,
}

#[derive(Debug, Clone)]
enum Backend {
    Table {
        orbits: Vec<OrbitInfo>,
        /// element index -> (orbit index, section sign)
        lookup: Vec<(usize, Sign)>,
    },
    Lattice {
        /// Translation subgroup `T` in `Z^{k+1}`, sign bit last.
        t: Lattice,
        /// Projection of `T` to `Z^k`.
        p: Lattice,
        neg_identity: bool,
    },
}

#[derive(Debug, Clone)]
pub struct GammaGroup {
    ctx: PairingContext,
    backend: Backend,
}

/// Builds the orbit decomposition for `ctx`.
pub fn build_gamma(ctx: PairingContext) -> GammaGroup {
    let backend = match &ctx.ambient {
        AmbientGroup::FiniteTable(_) => build_table(&ctx),
        AmbientGroup::FGAbelian(a) => {
            let k = a.rank();
            let mut tg: Vec<Vec<i64>> = Vec::new();
            for (v, s) in ctx.s_f.lattice_gens() {
                let mut w = v.clone();
                w.push(sign_to_bit(s));
                tg.push(w);
            }
            for (v, s) in ctx.s_g.lattice_gens() {
                let wb = ctx.w_m.eval(&GroupElem::Tuple(v.clone()));
                let mut w = v.clone();
                w.push(sign_to_bit(s * wb));
                tg.push(w);
            }
            let mut pg: Vec<Vec<i64>> = tg.iter().map(|w| w[..k].to_vec()).collect();
            pg.extend(a.relations(k));
            tg.extend(a.relations(k + 1));
            let mut two = vec![0; k + 1];
            two[k] = 2;
            tg.push(two);
            let t = Lattice::span(k + 1, &tg);
            let mut unit = vec![0; k + 1];
            unit[k] = 1;
            let neg_identity = t.contains(&unit);
            Backend::Lattice { t, p: Lattice::span(k, &pg), neg_identity }
        }
    };
    GammaGroup { ctx, backend }
}

fn build_table(ctx: &PairingContext) -> Backend {
    let g = &ctx.ambient;
    let n = g.order().expect("table groups are finite");
    let idx = |x: &GroupElem| match x {
        GroupElem::Index(i) => *i,
        GroupElem::Tuple(_) => unreachable!(),
    };
    // Moves on signed elements: left by S_f generators, right by S_g
    // generators, and the involution when self pairing.
    let step = |i: usize, s: Sign| -> Vec<(usize, Sign)> {
        let x = GroupElem::Index(i);
        let mut out = Vec::new();
        for (a, ea) in ctx.s_f.generators() {
            out.push((idx(&g.mul(a, &x)), s * ea));
        }
        for (b, eb) in ctx.s_g.generators() {
            out.push((idx(&g.mul(&x, b)), s * eb * ctx.w_m.eval(b)));
        }
        if ctx.self_pairing {
            out.push((idx(&g.inv(&x)), s * ctx.w_m.eval(&x)));
        }
        out.sort();
        out
    };
    let mut seen: Vec<[bool; 2]> = vec![[false; 2]; n];
    let mut first_sign: Vec<Option<Sign>> = vec![None; n];
    let mut orbit_of = vec![usize::MAX; n];
    let mut orbits = Vec::new();
    let slot = |s: Sign| if s > 0 { 0 } else { 1 };
    for start in 0..n {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let oi = orbits.len();
        let mut two = false;
        let mut queue = VecDeque::from([(start, 1 as Sign)]);
        seen[start][0] = true;
        first_sign[start] = Some(1);
        orbit_of[start] = oi;
        while let Some((i, s)) = queue.pop_front() {
            for (j, t) in step(i, s) {
                if seen[j][slot(t)] {
                    continue;
                }
                seen[j][slot(t)] = true;
                orbit_of[j] = oi;
                match first_sign[j] {
                    None => first_sign[j] = Some(t),
                    Some(_) => two = true,
                }
                queue.push_back((j, t));
            }
        }
        let tag = if two { OrderTag::Two } else { OrderTag::Infinite };
        orbits.push(OrbitInfo { rep: GroupElem::Index(start), tag });
    }
    let lookup = (0..n)
        .map(|i| {
            let o = orbit_of[i];
            let s = match orbits[o].tag {
                OrderTag::Two => 1,
                OrderTag::Infinite => first_sign[i].expect("visited"),
            };
            (o, s)
        })
        .collect();
    Backend::Table { orbits, lookup }
}

impl GammaGroup {
    pub fn context(&self) -> &PairingContext {
        &self.ctx
    }

    /// Orbit, tag and section sign of `gamma`.
    pub fn locate(&self, gamma: &GroupElem) -> Located {
        match &self.backend {
            Backend::Table { orbits, lookup } => {
                let GroupElem::Index(i) = gamma else {
                    panic!("element kind does not match group backend")
                };
                let (o, s) = lookup[*i];
                Located { rep: orbits[o].rep.clone(), tag: orbits[o].tag, section_sign: s }
            }
            Backend::Lattice { t, p, neg_identity } => {
                let GroupElem::Tuple(v) = self.ctx.ambient.canon(gamma) else {
                    panic!("element kind does not match group backend")
                };
                let plus = p.reduce(&v);
                let rep = if self.ctx.self_pairing {
                    let neg: Vec<i64> = v.iter().map(|x| -x).collect();
                    plus.clone().min(p.reduce(&neg))
                } else {
                    plus.clone()
                };
                let rep = match self.ctx.ambient.canon(&GroupElem::Tuple(rep)) {
                    GroupElem::Tuple(r) => r,
                    GroupElem::Index(_) => unreachable!(),
                };
                let sigma = |h: &[i64]| -> Sign {
                    let mut w = h.to_vec();
                    w.push(0);
                    if t.contains(&w) {
                        1
                    } else {
                        -1
                    }
                };
                let w_rep = self.ctx.w_m.eval(&GroupElem::Tuple(rep.clone()));
                let tag = if *neg_identity {
                    OrderTag::Two
                } else if self.ctx.self_pairing {
                    let mut w: Vec<i64> = rep.iter().map(|x| 2 * x).collect();
                    w.push(sign_to_bit(-w_rep));
                    if t.contains(&w) {
                        OrderTag::Two
                    } else {
                        OrderTag::Infinite
                    }
                } else {
                    OrderTag::Infinite
                };
                let section_sign = match tag {
                    OrderTag::Two => 1,
                    OrderTag::Infinite => {
                        let diff: Vec<i64> = v.iter().zip(&rep).map(|(a, b)| a - b).collect();
                        if p.contains(&diff) {
                            sigma(&diff)
                        } else {
                            let sum: Vec<i64> = v.iter().zip(&rep).map(|(a, b)| a + b).collect();
                            w_rep * sigma(&sum)
                        }
                    }
                };
                Located { rep: GroupElem::Tuple(rep), tag, section_sign }
            }
        }
    }

    /// All orbits, or `None` when there are infinitely many.
    pub fn orbits(&self) -> Option<Vec<OrbitInfo>> {
        match &self.backend {
            Backend::Table { orbits, .. } => Some(orbits.clone()),
            Backend::Lattice { p, .. } => {
                let boxed = p.coset_box()?;
                let mut seen = BTreeMap::new();
                for v in boxed {
                    let loc = self.locate(&GroupElem::Tuple(v));
                    seen.entry(loc.rep.clone()).or_insert(loc.tag);
                }
                Some(seen.into_iter().map(|(rep, tag)| OrbitInfo { rep, tag }).collect())
            }
        }
    }

    /// Free rank and number of `Z/2` summands, when finitely many orbits.
    pub fn invariants(&self) -> Option<(usize, usize)> {
        let orbits = self.orbits()?;
        let two = orbits.iter().filter(|o| o.tag == OrderTag::Two).count();
        Some((orbits.len() - two, two))
    }

    /// Tag of the orbit of the identity element.
    pub fn identity_tag(&self) -> OrderTag {
        self.locate(&self.ctx.ambient.identity()).tag
    }
}

/// A signed list of group elements, one entry per double point.
pub type IntersectionList = Vec<(Sign, GroupElem)>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coefficient {
    Int(i64),
    Mod2(u8),
}

impl Coefficient {
    pub fn is_zero(&self) -> bool {
        matches!(self, Coefficient::Int(0) | Coefficient::Mod2(0))
    }
}

/// An element of an intersection-number group, as coefficients on orbit
/// representatives. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GammaElement {
    coeffs: BTreeMap<GroupElem, (OrderTag, i64)>,
}

impl GammaElement {
    pub fn zero() -> Self {
        GammaElement::default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_at(&mut self, rep: GroupElem, tag: OrderTag, c: i64) {
        let e = self.coeffs.entry(rep.clone()).or_insert((tag, 0));
        e.1 += c;
        if tag == OrderTag::Two {
            e.1 = e.1.rem_euclid(2);
        }
        if e.1 == 0 {
            self.coeffs.remove(&rep);
        }
    }

    pub fn add(&self, other: &GammaElement) -> GammaElement {
        let mut out = self.clone();
        for (rep, (tag, c)) in &other.coeffs {
            out.add_at(rep.clone(), *tag, *c);
        }
        out
    }

    /// `(representative, tag, coefficient)` triples in representative order.
    pub fn terms(&self) -> impl Iterator<Item = (&GroupElem, OrderTag, i64)> {
        self.coeffs.iter().map(|(r, (t, c))| (r, *t, *c))
    }

    /// Coefficient on a representative, ignoring section signs.
    pub fn at_rep(&self, rep: &GroupElem) -> i64 {
        self.coeffs.get(rep).map(|x| x.1).unwrap_or(0)
    }
}

/// Sums the signed entries into the group.
pub fn reduce(list: &[(Sign, GroupElem)], gamma: &GammaGroup) -> GammaElement {
    let mut out = GammaElement::zero();
    for (eps, eta) in list {
        let loc = gamma.locate(eta);
        out.add_at(loc.rep, loc.tag, (*eps as i64) * (loc.section_sign as i64));
    }
    out
}

/// The coefficient of `elem` at `gamma_q`, relative to a section through `gamma_q`.
pub fn coefficient_at(elem: &GammaElement, gamma: &GammaGroup, gamma_q: &GroupElem) -> Coefficient {
    let loc = gamma.locate(gamma_q);
    let c = elem.at_rep(&loc.rep);
    match loc.tag {
        OrderTag::Two => Coefficient::Mod2(c.rem_euclid(2) as u8),
        OrderTag::Infinite => Coefficient::Int(c * loc.section_sign as i64),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mu1Home {
    Z,
    Z2,
}

/// Where the identity coefficient of the self-intersection number lives.
pub fn mu1_home(ctx: &PairingContext) -> Result<Mu1Home, GammaError> {
    if !ctx.self_pairing {
        return Err(GammaError::SelfPairingMismatch);
    }
    let orientation_ok = ctx.s_f.generators().iter().all(|(a, _)| ctx.w_m.eval(a) == 1);
    if !ctx.s_f.contains_neg_identity() && orientation_ok {
        Ok(Mu1Home::Z)
    } else {
        Ok(Mu1Home::Z2)
    }
}

/// Checks or solves `lambda_1 = 2 mu_1 + e` with at most one unknown.
pub fn euler_relation(
    lambda1: Option<i64>,
    mu1: Option<i64>,
    e: Option<i64>,
) -> Result<(i64, i64, i64), GammaError> {
    match (lambda1, mu1, e) {
        (Some(l), Some(m), Some(e)) => {
            if l == 2 * m + e {
                Ok((l, m, e))
            } else {
                Err(GammaError::InconsistentEulerData { lambda1: l, mu1: m, e })
            }
        }
        (None, Some(m), Some(e)) => Ok((2 * m + e, m, e)),
        (Some(l), Some(m), None) => Ok((l, m, l - 2 * m)),
        (Some(l), None, Some(e)) => {
            if (l - e).rem_euclid(2) != 0 {
                return Err(GammaError::InconsistentEulerData { lambda1: l, mu1: (l - e).div_euclid(2), e });
            }
            Ok((l, (l - e) / 2, e))
        }
        _ => Err(GammaError::Underdetermined),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiberIndex {
    Int(i64),
    Mod2(u8),
}

/// Index of a regular homotopy class inside its homotopy class.
///
/// With `w1_pullback_trivial` the index is `e/2` (`w2 = 0`) or `(e-1)/2`
/// (`w2 = 1`); otherwise it is the identity coefficient of mu mod 2.
pub fn regular_homotopy_fiber(
    w1_pullback_trivial: bool,
    w2: u8,
    e_or_mu1: i64,
) -> Result<FiberIndex, GammaError> {
    if !w1_pullback_trivial {
        return Ok(FiberIndex::Mod2(e_or_mu1.rem_euclid(2) as u8));
    }
    let e = e_or_mu1;
    match (w2, e.rem_euclid(2)) {
        (0, 0) => Ok(FiberIndex::Int(e / 2)),
        (1, 1) => Ok(FiberIndex::Int((e - 1).div_euclid(2))),
        _ => Err(GammaError::ParityMismatch { e, w2 }),
    }
}

/// Independent check of [`build_gamma`]: Smith normal form of the relation
/// matrix on the free module over the group elements.
pub fn smith_oracle(ctx: &PairingContext) -> Result<(usize, Vec<i64>), GammaError> {
    let elems = ctx.ambient.elements().ok_or(GammaError::AmbientNotFinite)?;
    let n = elems.len();
    let idx = |x: &GroupElem| ctx.ambient.index_of(x).expect("finite");
    let mut rows = Vec::new();
    let mut push = |i: usize, j: usize, s: Sign| {
        let mut r = vec![0i64; n];
        r[i] += 1;
        r[j] -= s as i64;
        if r.iter().any(|&x| x != 0) {
            rows.push(r);
        }
    };
    for x in &elems {
        for (a, ea) in ctx.s_f.generators() {
            push(idx(x), idx(&ctx.ambient.mul(a, x)), *ea);
        }
        for (b, eb) in ctx.s_g.generators() {
            push(idx(x), idx(&ctx.ambient.mul(x, b)), eb * ctx.w_m.eval(b));
        }
        if ctx.self_pairing {
            push(idx(x), idx(&ctx.ambient.inv(x)), ctx.w_m.eval(x));
        }
    }
    Ok(snf::cokernel_invariants(&rows, n))
}
