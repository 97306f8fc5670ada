//! Seifert-matrix invariants of knots and the genus bounds built on them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KnotError {
    #[error("Seifert matrix must be square")]
    NotSquare,
    #[error("Seifert matrix has odd size {0}")]
    OddSize(usize),
    #[error("det(V - V^T) = {0}, expected +-1")]
    NotUnimodular(String),
    #[error("determinant rule gives Arf {det_rule}, quadratic form count gives {oracle}")]
    ArfMethodsDisagree { det_rule: u8, oracle: u8 },
    #[error("the form is singular at exp(i pi {p}/{q})")]
    SingularAtOmega { p: i64, q: i64 },
    #[error("d = {0} is not covered by the signature bounds")]
    DNotCovered(i64),
    #[error("rank zero intersection form")]
    RankZero,
    #[error("interval refinement reached the precision cap without separating a sign")]
    PrecisionCap,
    #[error("omega denominator must be positive")]
    InvalidOmega,
    #[error("internal arithmetic check failed: {0}")]
    Internal(&'static str),
}

/// A square integer matrix of even size with `det(V - V^T) = +-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertMatrix {
    v: Vec<Vec<i64>>,
}

impl SeifertMatrix {
    pub fn new(v: Vec<Vec<i64>>) -> Result<SeifertMatrix, KnotError> {
        let n = v.len();
        if v.iter().any(|r| r.len() != n) {
            return Err(KnotError::NotSquare);
        }
        if !n.is_multiple_of(2) {
            return Err(KnotError::OddSize(n));
        }
        let skew: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| v[i][j] - v[j][i]).collect()).collect();
        let d = det_i64(&skew);
        if d.abs() != BigInt::one() {
            return Err(KnotError::NotUnimodular(d.to_string()));
        }
        Ok(SeifertMatrix { v })
    }

    pub fn size(&self) -> usize {
        self.v.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.v
    }

    /// Block-diagonal sum, the Seifert matrix of the connected sum.
    pub fn block_sum(&self, other: &SeifertMatrix) -> SeifertMatrix {
        let (a, b) = (self.size(), other.size());
        let mut v = vec![vec![0; a + b]; a + b];
        for i in 0..a {
            v[i][..a].copy_from_slice(&self.v[i]);
        }
        for i in 0..b {
            v[a + i][a..].copy_from_slice(&other.v[i]);
        }
        SeifertMatrix { v }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotSpec {
    pub name: String,
    pub seifert: SeifertMatrix,
}

impl KnotSpec {
    pub fn connected_sum(&self, other: &KnotSpec) -> KnotSpec {
        KnotSpec {
            name: format!("{} # {}", self.name, other.name),
            seifert: self.seifert.block_sum(&other.seifert),
        }
    }
}

/// Genus-`k` Seifert matrix of the `(2, 2k+1)` torus knot.
pub fn torus_knot_2(k: usize) -> SeifertMatrix {
    let n = 2 * k;
    let mut v = vec![vec![0; n]; n];
    for i in 0..n {
        v[i][i] = -1;
        if i + 1 < n {
            v[i][i + 1] = 1;
        }
    }
    SeifertMatrix { v }
}

pub fn unknot() -> SeifertMatrix {
    SeifertMatrix { v: Vec::new() }
}

pub fn figure_eight() -> SeifertMatrix {
    SeifertMatrix { v: vec![vec![-1, 1], vec![0, 1]] }
}

/// Determinant by fraction-free elimination.
pub fn det_bigint(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn det_i64(m: &[Vec<i64>]) -> BigInt {
    let b: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    det_bigint(&b)
}

/// `det(V + V^T)`.
pub fn alexander_at_minus_one(v: &SeifertMatrix) -> BigInt {
    let n = v.size();
    let s: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| v.v[i][j] + v.v[j][i]).collect()).collect();
    det_i64(&s)
}

/// Arf invariant from the determinant modulo 8.
pub fn arf_by_determinant(v: &SeifertMatrix) -> u8 {
    let r = alexander_at_minus_one(v).abs().mod_floor(&BigInt::from(8)).to_u8().expect("small");
    u8::from(r == 3 || r == 5)
}

/// Arf invariant as the majority value of `x -> x V x^T` on `GF(2)^n`.
pub fn arf_by_quadratic_form(v: &SeifertMatrix) -> u8 {
    let n = v.size();
    let m: Vec<Vec<u8>> = v.v.iter().map(|r| r.iter().map(|x| x.rem_euclid(2) as u8).collect()).collect();
    let mut ones: u64 = 0;
    for x in 0u64..(1u64 << n) {
        let bit = |i: usize| ((x >> i) & 1) as u8;
        let mut q = 0u8;
        for i in 0..n {
            if bit(i) == 0 {
                continue;
            }
            for j in 0..n {
                q ^= m[i][j] & bit(j);
            }
        }
        ones += q as u64;
    }
    u8::from(2 * ones > (1u64 << n))
}

/// Arf invariant, computed both ways and cross-checked.
pub fn arf(v: &SeifertMatrix) -> Result<u8, KnotError> {
    let det_rule = arf_by_determinant(v);
    let oracle = arf_by_quadratic_form(v);
    if det_rule != oracle {
        return Err(KnotError::ArfMethodsDisagree { det_rule, oracle });
    }
    Ok(det_rule)
}

/// Arithmetic in `Z[zeta]` for `zeta = exp(i pi / q)`, on the power basis
/// `1, zeta, ..., zeta^(phi - 1)` modulo the cyclotomic polynomial.
struct Cyclotomic {
    order: usize,
    modulus: Vec<i64>,
}

type CycElem = Vec<BigInt>;

fn poly_exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let lead = *den.last().expect("nonempty");
    let mut q = vec![0; num.len() - dd];
    for k in (0..q.len()).rev() {
        let c = r[k + dd] / lead;
        q[k] = c;
        for (i, &d) in den.iter().enumerate() {
            r[k + i] -= c * d;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

/// Coefficients, lowest degree first, of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: usize) -> Vec<i64> {
    let mut p = vec![0i64; n + 1];
    p[0] = -1;
    p[n] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = poly_exact_div(&p, &cyclotomic_polynomial(d));
        }
    }
    p
}

impl Cyclotomic {
    fn new(q: usize) -> Cyclotomic {
        let order = 2 * q;
        Cyclotomic { order, modulus: cyclotomic_polynomial(order) }
    }

    fn deg(&self) -> usize {
        self.modulus.len() - 1
    }

    fn reduce(&self, raw: Vec<BigInt>) -> CycElem {
        let mut folded = vec![BigInt::zero(); self.order.max(self.deg())];
        for (i, c) in raw.into_iter().enumerate() {
            folded[i % self.order] += c;
        }
        let d = self.deg();
        for k in (d..folded.len()).rev() {
            if folded[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut folded[k]);
            for (i, &m) in self.modulus.iter().enumerate().take(d) {
                folded[k - d + i] -= &c * m;
            }
        }
        folded.truncate(d);
        folded
    }

    fn zero(&self) -> CycElem {
        vec![BigInt::zero(); self.deg()]
    }

    fn power(&self, j: i64) -> CycElem {
        let mut raw = vec![BigInt::zero(); self.order];
        raw[j.rem_euclid(self.order as i64) as usize] = BigInt::one();
        self.reduce(raw)
    }

    fn int(&self, k: i64) -> CycElem {
        let mut z = self.zero();
        z[0] = BigInt::from(k);
        z
    }

    fn add(&self, a: &CycElem, b: &CycElem) -> CycElem {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn sub(&self, a: &CycElem, b: &CycElem) -> CycElem {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    fn scale(&self, a: &CycElem, k: i64) -> CycElem {
        a.iter().map(|x| x * k).collect()
    }

    fn mul(&self, a: &CycElem, b: &CycElem) -> CycElem {
        let mut raw = vec![BigInt::zero(); 2 * self.deg()];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                raw[i + j] += x * y;
            }
        }
        self.reduce(raw)
    }

    fn conj(&self, a: &CycElem) -> CycElem {
        let mut raw = vec![BigInt::zero(); self.order];
        for (j, c) in a.iter().enumerate() {
            raw[(self.order - j) % self.order] += c;
        }
        self.reduce(raw)
    }
}

fn is_zero_elem(a: &CycElem) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// A real number `center / 2^bits` known to within `err / 2^bits`.
#[derive(Debug, Clone)]
struct Approx {
    center: BigInt,
    err: BigInt,
}

/// `atan(1/k) * 2^bits` to within the returned number of units.
fn atan_inv_fixed(k: i64, bits: u32) -> Approx {
    let one = BigInt::one() << bits;
    let k2 = BigInt::from(k * k);
    let mut pow = BigInt::from(k);
    let mut sum = BigInt::zero();
    let mut n: i64 = 0;
    loop {
        let term = &one / (&pow * (2 * n + 1));
        if term.is_zero() {
            break;
        }
        if n % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        pow *= &k2;
        n += 1;
    }
    Approx { center: sum, err: BigInt::from(n + 1) }
}

/// `pi = 16 atan(1/5) - 4 atan(1/239)`.
fn pi_fixed(bits: u32) -> Approx {
    let a = atan_inv_fixed(5, bits);
    let b = atan_inv_fixed(239, bits);
    Approx { center: a.center * 16 - b.center * 4, err: a.err * 16 + b.err * 4 }
}

/// `cos(x)` for `0 <= x <= 1.6`, by the Taylor series in fixed point.
///
/// Each computed term is within 3 units of the exact one, and the
/// discarded tail is below the last term, so `4 (K + 3)` units bound the
/// rounding error over `K` terms; `cos` is 1-Lipschitz in the argument.
fn cos_fixed(x: &Approx, bits: u32) -> Approx {
    let x2 = (&x.center * &x.center) >> bits;
    let mut term = BigInt::one() << bits;
    let mut sum = BigInt::zero();
    let mut k: i64 = 0;
    while !term.is_zero() {
        if k % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        term = ((&term * &x2) >> bits) / ((2 * k + 1) * (2 * k + 2));
        k += 1;
    }
    Approx { center: sum, err: BigInt::from(4 * (k + 3)) + &x.err }
}

/// `cos(pi j / q)` for `j = 0 .. count`.
fn cos_table(q: i64, count: usize, bits: u32) -> Vec<Approx> {
    let pi = pi_fixed(bits);
    (0..count as i64)
        .map(|j| {
            let mut j = j.rem_euclid(2 * q);
            if j > q {
                j = 2 * q - j;
            }
            let (j, flip) = if 2 * j > q { (q - j, true) } else { (j, false) };
            let arg = Approx { center: &pi.center * j / q, err: &pi.err + 1 };
            let c = cos_fixed(&arg, bits);
            if flip {
                Approx { center: -c.center, err: c.err }
            } else {
                c
            }
        })
        .collect()
}

const START_BITS: u32 = 64;
const MAX_BITS: u32 = 16384;

/// Signs of the real numbers `sum_j a_j cos(pi j / q)`, each known to be
/// nonzero, refining precision until every enclosure excludes zero.
fn signs_of_reals(values: &[&CycElem], q: i64) -> Result<Vec<i8>, KnotError> {
    let count = values.iter().map(|v| v.len()).max().unwrap_or(0);
    let mut out: Vec<Option<i8>> = vec![None; values.len()];
    let mut bits = START_BITS;
    while bits <= MAX_BITS {
        let table = cos_table(q, count, bits);
        for (slot, a) in out.iter_mut().zip(values) {
            if slot.is_some() {
                continue;
            }
            let mut center = BigInt::zero();
            let mut err = BigInt::zero();
            for (c, t) in a.iter().zip(&table) {
                if c.is_zero() {
                    continue;
                }
                center += c * &t.center;
                err += c.abs() * &t.err;
            }
            if center.abs() > err {
                *slot = Some(if center.is_positive() { 1 } else { -1 });
            }
        }
        if out.iter().all(|s| s.is_some()) {
            return Ok(out.into_iter().map(|s| s.expect("resolved")).collect());
        }
        bits *= 2;
    }
    Err(KnotError::PrecisionCap)
}

fn sign_variations(signs: &[i8]) -> usize {
    let nz: Vec<i8> = signs.iter().copied().filter(|&s| s != 0).collect();
    nz.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Levine-Tristram signature at `omega = exp(i pi p / q)`.
pub fn levine_tristram(v: &SeifertMatrix, p: i64, q: i64) -> Result<i64, KnotError> {
    if q <= 0 {
        return Err(KnotError::InvalidOmega);
    }
    let n = v.size();
    if n == 0 {
        return Ok(0);
    }
    let g = p.gcd(&q);
    let (p, q) = (p / g, q / g);
    let ring = Cyclotomic::new(q as usize);
    let one = ring.int(1);
    let a = ring.sub(&one, &ring.power(p));
    let abar = ring.conj(&a);
    let h: Vec<Vec<CycElem>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| ring.add(&ring.scale(&a, v.v[i][j]), &ring.scale(&abar, v.v[j][i])))
                .collect()
        })
        .collect();
    let coeffs = char_poly(&ring, &h)?;
    if is_zero_elem(&coeffs[0]) {
        return Err(KnotError::SingularAtOmega { p, q });
    }
    if coeffs.iter().any(|c| ring.conj(c) != *c) {
        return Err(KnotError::Internal("characteristic polynomial has a non-real coefficient"));
    }
    let nonzero: Vec<&CycElem> = coeffs.iter().filter(|c| !is_zero_elem(c)).collect();
    let mut resolved = signs_of_reals(&nonzero, q)?.into_iter();
    let signs: Vec<i8> = coeffs
        .iter()
        .map(|c| if is_zero_elem(c) { 0 } else { resolved.next().expect("one sign per nonzero") })
        .collect();
    let pos = sign_variations(&signs);
    let alternated: Vec<i8> = signs.iter().enumerate().map(|(k, &s)| if k % 2 == 1 { -s } else { s }).collect();
    let neg = sign_variations(&alternated);
    if pos + neg != n {
        return Err(KnotError::Internal("root count does not match the matrix size"));
    }
    Ok(pos as i64 - neg as i64)
}

/// Characteristic polynomial coefficients, lowest degree first.
fn char_poly(ring: &Cyclotomic, a: &[Vec<CycElem>]) -> Result<Vec<CycElem>, KnotError> {
    let n = a.len();
    let mut c = vec![ring.zero(); n + 1];
    c[n] = ring.int(1);
    let mut m: Vec<Vec<CycElem>> = vec![vec![ring.zero(); n]; n];
    for k in 1..=n {
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = ring.add(&row[i], &c[n - k + 1]);
        }
        let am: Vec<Vec<CycElem>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n).fold(ring.zero(), |acc, l| ring.add(&acc, &ring.mul(&a[i][l], &m[l][j])))
                    })
                    .collect()
            })
            .collect();
        let tr = (0..n).fold(ring.zero(), |acc, i| ring.add(&acc, &am[i][i]));
        let kk = BigInt::from(k as i64);
        let mut ck = Vec::with_capacity(tr.len());
        for x in tr {
            let (qv, r) = x.div_rem(&kk);
            if !r.is_zero() {
                return Err(KnotError::Internal("trace not divisible in the recursion"));
            }
            ck.push(-qv);
        }
        c[n - k] = ck;
        m = am;
    }
    Ok(c)
}

/// Classical signature, at `omega = -1`.
pub fn signature(v: &SeifertMatrix) -> Result<i64, KnotError> {
    levine_tristram(v, 1, 1)
}

/// Signature at `exp(i pi (d - 1) / d)`.
pub fn sigma_d(v: &SeifertMatrix, d: i64) -> Result<i64, KnotError> {
    if d.abs() < 2 {
        return Err(KnotError::DNotCovered(d));
    }
    let (p, q) = if d > 0 { (d - 1, d) } else { (1 - d, -d) };
    levine_tristram(v, p, q)
}

fn odd_prime_divisors(d: i64) -> Vec<i64> {
    let mut n = d.abs();
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            if p != 2 {
                out.push(p);
            }
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 2 {
        out.push(n);
    }
    out
}

fn genus_from_rhs(rhs: i64) -> i64 {
    ((rhs - 1) as f64 / 2.0).ceil().max(0.0) as i64
}

/// Lower bound on the genus of a surface in the punctured complex
/// projective plane representing `d` times a generator with boundary `K`.
pub fn cp2_genus_lower_bound(v: &SeifertMatrix, d: i64) -> Result<i64, KnotError> {
    if d.abs() == 1 {
        return Err(KnotError::DNotCovered(d));
    }
    let mut best = 0;
    if d % 2 == 0 {
        let rhs = (d * d / 2 - 1 - signature(v)?).abs();
        best = best.max(genus_from_rhs(rhs));
    }
    let ps = odd_prime_divisors(d);
    if !ps.is_empty() {
        let s = sigma_d(v, d)?;
        for p in ps {
            let r = d / p;
            let main = (p * p - 1) * r * r / 2;
            best = best.max(genus_from_rhs((main - 1 - s).abs()));
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cp2Verdict {
    pub lower: i64,
    pub upper: i64,
    pub exact: Option<i64>,
    /// Largest `|d|` that was scanned, or `None` when Arf decides.
    pub window: Option<i64>,
    /// The window exceeded the cap, so the scan is not conclusive.
    pub incomplete: bool,
    /// `(d, bound)` for every scanned `d`.
    pub bounds: Vec<(i64, i64)>,
}

pub const D_SCAN_CAP: i64 = 64;

/// Window past which every signature bound is at least 1: each `|d| >= 2`
/// is even or has an odd prime factor, both bounds grow at least like
/// `4 d^2 / 9`, and `|sigma| <= size`.
pub fn d_scan_window(size: usize) -> i64 {
    let need = 9 * (3 + size as i64);
    let mut d = 0;
    while 4 * d * d < need {
        d += 1;
    }
    d
}

/// Topological genus in the complex projective plane, bracketed.
pub fn cp2_genus_verdict(v: &SeifertMatrix) -> Result<Cp2Verdict, KnotError> {
    if arf(v)? == 0 {
        return Ok(Cp2Verdict { lower: 0, upper: 1, exact: Some(0), window: None, incomplete: false, bounds: vec![] });
    }
    let window = d_scan_window(v.size());
    let limit = window.min(D_SCAN_CAP);
    let ds: Vec<i64> = (-limit..=limit).filter(|d| d.abs() != 1).collect();
    let bounds: Vec<(i64, i64)> = ds
        .par_iter()
        .map(|&d| cp2_genus_lower_bound(v, d).map(|b| (d, b)))
        .collect::<Result<_, _>>()?;
    let incomplete = window > D_SCAN_CAP;
    let all_positive = bounds.iter().all(|&(_, b)| b >= 1);
    let exact = (all_positive && !incomplete).then_some(1);
    Ok(Cp2Verdict {
        lower: if exact.is_some() { 1 } else { 0 },
        upper: 1,
        exact,
        window: Some(limit),
        incomplete,
        bounds,
    })
}

/// Topological shake genus for framings `+-1`.
pub fn shake_genus_pm1(v: &SeifertMatrix) -> Result<u8, KnotError> {
    arf(v)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MGenus {
    Zero,
    /// Rank one forms go through the projective plane analysis; `flagged`
    /// marks that the homotopy-equivalent fake plane shares this route.
    Routed { verdict: Cp2Verdict, flagged: bool },
}

/// Genus of `K` in a simply connected closed manifold with form of the
/// given rank.
pub fn m_genus_simply_connected(rank: usize, v: &SeifertMatrix) -> Result<MGenus, KnotError> {
    match rank {
        0 => Err(KnotError::RankZero),
        1 => Ok(MGenus::Routed { verdict: cp2_genus_verdict(v)?, flagged: true }),
        _ => Ok(MGenus::Zero),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> SeifertMatrix {
        torus_knot_2(1)
    }

    fn triple() -> SeifertMatrix {
        trefoil().block_sum(&trefoil()).block_sum(&trefoil())
    }

    #[test]
    fn validity() {
        assert!(SeifertMatrix::new(vec![vec![-1, 1], vec![0, -1]]).is_ok());
        assert_eq!(SeifertMatrix::new(vec![vec![1]]), Err(KnotError::OddSize(1)));
        assert!(matches!(SeifertMatrix::new(vec![vec![1, 0], vec![0, 1]]), Err(KnotError::NotUnimodular(_))));
        assert!(SeifertMatrix::new(triple().entries().to_vec()).is_ok());
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn alexander_values() {
        assert_eq!(alexander_at_minus_one(&unknot()), BigInt::one());
        let t = trefoil().entries().to_vec();
        let hand = (2 * t[0][0]) * (2 * t[1][1]) - (t[0][1] + t[1][0]) * (t[1][0] + t[0][1]);
        assert_eq!(alexander_at_minus_one(&trefoil()), BigInt::from(hand));
        assert_eq!(alexander_at_minus_one(&triple()), BigInt::from(hand.pow(3)));
    }

    #[test]
    fn arf_values() {
        assert_eq!(arf(&unknot()), Ok(0));
        assert_eq!(arf(&trefoil()), Ok(1));
        assert_eq!(arf(&triple()), Ok(1));
        assert_eq!(arf(&figure_eight()), Ok(1));
        assert_eq!(arf(&torus_knot_2(2)), Ok(1));
        assert_eq!(arf(&trefoil().block_sum(&trefoil())), Ok(0));
    }

    #[test]
    fn signatures() {
        assert_eq!(levine_tristram(&unknot(), 1, 3), Ok(0));
        assert_eq!(signature(&trefoil()), Ok(-2));
        assert_eq!(signature(&figure_eight()), Ok(0));
        assert_eq!(signature(&triple()), Ok(-6));
        assert_eq!(signature(&torus_knot_2(2)), Ok(-4));
        assert_eq!(levine_tristram(&trefoil(), 1, 6), Ok(0));
        assert_eq!(levine_tristram(&trefoil(), 1, 2), Ok(-2));
        assert!(matches!(levine_tristram(&trefoil(), 1, 3), Err(KnotError::SingularAtOmega { .. })));
        assert_eq!(levine_tristram(&trefoil(), 2, 3), levine_tristram(&trefoil(), -2, 3));
    }

    #[test]
    fn sigma_d_values() {
        for d in 2..=12 {
            assert_eq!(sigma_d(&triple(), d), Ok(-6), "d = {d}");
        }
        assert_eq!(sigma_d(&unknot(), 2), Ok(0));
        assert_eq!(sigma_d(&triple(), 1), Err(KnotError::DNotCovered(1)));
    }

    #[test]
    fn genus_bounds() {
        assert_eq!(cp2_genus_lower_bound(&triple(), 2), Ok(3));
        assert_eq!(cp2_genus_lower_bound(&triple(), 3), Ok(4));
        assert_eq!(cp2_genus_lower_bound(&unknot(), 2), Ok(0));
        assert_eq!(cp2_genus_lower_bound(&triple(), -1), Err(KnotError::DNotCovered(-1)));
    }

    #[test]
    fn verdicts() {
        assert_eq!(cp2_genus_verdict(&unknot()).unwrap().exact, Some(0));
        let v = cp2_genus_verdict(&triple()).unwrap();
        assert_eq!((v.lower, v.upper, v.exact), (1, 1, Some(1)));
        assert_eq!(shake_genus_pm1(&triple()), Ok(1));
        assert_eq!(m_genus_simply_connected(2, &triple()), Ok(MGenus::Zero));
        assert!(matches!(
            m_genus_simply_connected(1, &triple()),
            Ok(MGenus::Routed { verdict: Cp2Verdict { exact: Some(1), .. }, flagged: true })
        ));
        assert_eq!(m_genus_simply_connected(0, &triple()), Err(KnotError::RankZero));
    }
}
