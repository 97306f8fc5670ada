//! Fundamental groups, orientation characters and signed subgroups.
//!
//! Two backends are supported: finite groups given by a multiplication table,
//! and finitely generated abelian groups given by invariant factors.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::lattice::Lattice;

/// An orientation sign, always `+1` or `-1`.
pub type Sign = i8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("multiplication table is not square or has an out-of-range entry")]
    MalformedTable,
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("character has {got} values, expected {expected}")]
    CharacterLength { expected: usize, got: usize },
    #[error("character value {0} is not +1 or -1")]
    CharacterValue(i64),
    #[error("character is not multiplicative at ({0}, {1})")]
    NotMultiplicative(usize, usize),
    #[error("character is -1 on generator {0}, which has odd order {1}")]
    OddOrderSign(usize, u64),
    #[error("element {0:?} is not valid for this group")]
    InvalidElement(GroupElem),
    #[error("sign {0} is not +1 or -1")]
    InvalidSign(i64),
}

/// A group element: a table index or an integer tuple, by backend.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupElem {
    Index(usize),
    Tuple(Vec<i64>),
}

/// A finite group presented by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.table.len()
    }
    pub fn identity(&self) -> usize {
        self.identity
    }
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }
    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }
    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    /// Smallest size of a generating set, by exhaustive search.
    pub fn min_generators(&self) -> usize {
        let n = self.order();
        if n == 1 {
            return 0;
        }
        for k in 1..=n {
            if subsets(n, k).any(|s| self.generated(&s).len() == n) {
                return k;
            }
        }
        n
    }

    fn generated(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([self.identity]);
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }
}

fn subsets(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut idx: Vec<usize> = (0..k).collect();
    let mut done = k > n;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = idx.clone();
        let mut i = k;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

/// A finitely generated abelian group `Z/f_1 x ... x Z/f_k`, with `f_i = 0` meaning `Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    factors: Vec<u64>,
}

impl AbelianGroup {
    pub fn new(factors: Vec<u64>) -> AbelianGroup {
        AbelianGroup { factors }
    }
    pub fn factors(&self) -> &[u64] {
        &self.factors
    }
    pub fn rank(&self) -> usize {
        self.factors.len()
    }
    pub fn is_finite(&self) -> bool {
        self.factors.iter().all(|&f| f > 0)
    }
    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        v.iter()
            .zip(&self.factors)
            .map(|(&x, &f)| if f == 0 { x } else { x.rem_euclid(f as i64) })
            .collect()
    }
    pub fn add(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.reduce(&s)
    }
    pub fn neg(&self, a: &[i64]) -> Vec<i64> {
        let s: Vec<i64> = a.iter().map(|x| -x).collect();
        self.reduce(&s)
    }
    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.factors.len()]
    }
    /// Relation vectors `f_i e_i` for the finite factors, padded to `dim`.
    pub(crate) fn relations(&self, dim: usize) -> Vec<Vec<i64>> {
        self.factors
            .iter()
            .enumerate()
            .filter(|(_, &f)| f > 0)
            .map(|(i, &f)| {
                let mut v = vec![0; dim];
                v[i] = f as i64;
                v
            })
            .collect()
    }
    /// Smallest number of generators: count of factors other than 1,
    /// after elementary-divisor normalisation.
    pub fn min_generators(&self) -> usize {
        let diag: Vec<i64> = self.factors.iter().map(|&f| f as i64).collect();
        crate::snf::invariant_factors_diag(&diag)
            .iter()
            .filter(|&&d| d != 1)
            .count()
    }
}

/// The ambient fundamental group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AmbientGroup {
    FiniteTable(FiniteGroup),
    FGAbelian(AbelianGroup),
}

/// Validates a multiplication table. Checks run in the order identity,
/// inverses, associativity; the first failing axiom is reported.
pub fn make_finite_group(table: Vec<Vec<usize>>) -> Result<AmbientGroup, GroupError> {
    let n = table.len();
    if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
        return Err(GroupError::MalformedTable);
    }
    let identity = (0..n)
        .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
        .ok_or(GroupError::NoIdentity)?;
    let mut inverse = vec![0; n];
    for (a, slot) in inverse.iter_mut().enumerate() {
        *slot = (0..n)
            .find(|&b| table[a][b] == identity && table[b][a] == identity)
            .ok_or(GroupError::NoInverse(a))?;
    }
    for a in 0..n {
        for b in 0..n {
            let ab = table[a][b];
            for c in 0..n {
                if table[ab][c] != table[a][table[b][c]] {
                    return Err(GroupError::NotAssociative(a, b, c));
                }
            }
        }
    }
    Ok(AmbientGroup::FiniteTable(FiniteGroup { table, identity, inverse }))
}

/// `Z/n` as a table for `n >= 1`, and `Z` as an abelian group for `n = 0`.
pub fn cyclic_group(n: usize) -> AmbientGroup {
    if n == 0 {
        return AmbientGroup::FGAbelian(AbelianGroup::new(vec![0]));
    }
    let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    make_finite_group(table).expect("cyclic table is a group")
}

impl AmbientGroup {
    pub fn identity(&self) -> GroupElem {
        match self {
            AmbientGroup::FiniteTable(g) => GroupElem::Index(g.identity),
            AmbientGroup::FGAbelian(a) => GroupElem::Tuple(a.zero()),
        }
    }

    pub fn is_valid(&self, x: &GroupElem) -> bool {
        match (self, x) {
            (AmbientGroup::FiniteTable(g), GroupElem::Index(i)) => *i < g.order(),
            (AmbientGroup::FGAbelian(a), GroupElem::Tuple(v)) => v.len() == a.rank(),
            _ => false,
        }
    }

    /// Canonical form of an element; tuples are reduced modulo the factors.
    pub fn canon(&self, x: &GroupElem) -> GroupElem {
        match (self, x) {
            (AmbientGroup::FGAbelian(a), GroupElem::Tuple(v)) => GroupElem::Tuple(a.reduce(v)),
            _ => x.clone(),
        }
    }

    pub fn mul(&self, x: &GroupElem, y: &GroupElem) -> GroupElem {
        match (self, x, y) {
            (AmbientGroup::FiniteTable(g), GroupElem::Index(a), GroupElem::Index(b)) => {
                GroupElem::Index(g.mul(*a, *b))
            }
            (AmbientGroup::FGAbelian(a), GroupElem::Tuple(u), GroupElem::Tuple(v)) => {
                GroupElem::Tuple(a.add(u, v))
            }
            _ => panic!("element kind does not match group backend"),
        }
    }

    pub fn inv(&self, x: &GroupElem) -> GroupElem {
        match (self, x) {
            (AmbientGroup::FiniteTable(g), GroupElem::Index(a)) => GroupElem::Index(g.inv(*a)),
            (AmbientGroup::FGAbelian(a), GroupElem::Tuple(v)) => GroupElem::Tuple(a.neg(v)),
            _ => panic!("element kind does not match group backend"),
        }
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<usize> {
        match self {
            AmbientGroup::FiniteTable(g) => Some(g.order()),
            AmbientGroup::FGAbelian(a) if a.is_finite() => {
                Some(a.factors().iter().map(|&f| f as usize).product())
            }
            AmbientGroup::FGAbelian(_) => None,
        }
    }

    /// All elements in canonical order, `None` when infinite.
    pub fn elements(&self) -> Option<Vec<GroupElem>> {
        match self {
            AmbientGroup::FiniteTable(g) => Some((0..g.order()).map(GroupElem::Index).collect()),
            AmbientGroup::FGAbelian(a) if a.is_finite() => {
                let mut out = vec![vec![]];
                for &f in a.factors() {
                    out = out
                        .into_iter()
                        .flat_map(|v: Vec<i64>| {
                            (0..f as i64).map(move |x| {
                                let mut w = v.clone();
                                w.push(x);
                                w
                            })
                        })
                        .collect();
                }
                Some(out.into_iter().map(GroupElem::Tuple).collect())
            }
            AmbientGroup::FGAbelian(_) => None,
        }
    }

    /// Position of an element in [`AmbientGroup::elements`] for finite groups.
    pub fn index_of(&self, x: &GroupElem) -> Option<usize> {
        match (self, x) {
            (AmbientGroup::FiniteTable(_), GroupElem::Index(i)) => Some(*i),
            (AmbientGroup::FGAbelian(a), GroupElem::Tuple(v)) if a.is_finite() => {
                let v = a.reduce(v);
                let mut idx = 0usize;
                for (&x, &f) in v.iter().zip(a.factors()) {
                    idx = idx * f as usize + x as usize;
                }
                Some(idx)
            }
            _ => None,
        }
    }

    pub fn is_abelian(&self) -> bool {
        match self {
            AmbientGroup::FiniteTable(g) => g.is_abelian(),
            AmbientGroup::FGAbelian(_) => true,
        }
    }

    /// Minimal number of generators, for abelian groups only.
    pub fn abelian_generator_count(&self) -> Option<usize> {
        match self {
            AmbientGroup::FiniteTable(g) if g.is_abelian() => Some(g.min_generators()),
            AmbientGroup::FiniteTable(_) => None,
            AmbientGroup::FGAbelian(a) => Some(a.min_generators()),
        }
    }
}

/// Direct product of two table groups; element `(a, b)` has index `a * |H| + b`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> AmbientGroup {
    let (n, m) = (g.order(), h.order());
    let table = (0..n * m)
        .map(|x| {
            (0..n * m)
                .map(|y| g.mul(x / m, y / m) * m + h.mul(x % m, y % m))
                .collect()
        })
        .collect();
    make_finite_group(table).expect("product of groups is a group")
}

/// The subgroup of `Sym(k)` generated by `gens`, as a table group.
/// Permutations are composed right to left; the identity has index 0.
pub fn permutation_group(k: usize, gens: &[Vec<usize>]) -> AmbientGroup {
    let id: Vec<usize> = (0..k).collect();
    let compose = |p: &[usize], q: &[usize]| -> Vec<usize> { q.iter().map(|&i| p[i]).collect() };
    let mut elems = vec![id];
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let y = compose(&elems[i], g);
            if !elems.contains(&y) {
                elems.push(y);
            }
        }
        i += 1;
    }
    let pos = |p: &Vec<usize>| elems.iter().position(|q| q == p).expect("closed");
    let table = elems
        .iter()
        .map(|p| elems.iter().map(|q| pos(&compose(p, q))).collect())
        .collect();
    make_finite_group(table).expect("permutations form a group")
}

fn quaternion_group() -> AmbientGroup {
    // Index 2u + s encodes (-1)^s times unit u in (1, i, j, k).
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (1, 0), (2, 0), (3, 0)],
        [(1, 0), (0, 1), (3, 0), (2, 1)],
        [(2, 0), (3, 1), (0, 1), (1, 0)],
        [(3, 0), (2, 0), (1, 1), (0, 1)],
    ];
    let table = (0..8)
        .map(|x: usize| {
            (0..8)
                .map(|y: usize| {
                    let (u, s) = UNIT[x / 2][y / 2];
                    2 * u + (s + x % 2 + y % 2) % 2
                })
                .collect()
        })
        .collect();
    make_finite_group(table).expect("quaternion table is a group")
}

/// One representative of every isomorphism class of groups of order at most 8.
pub fn small_groups() -> Vec<(&'static str, AmbientGroup)> {
    let table = |g: AmbientGroup| match g {
        AmbientGroup::FiniteTable(t) => t,
        AmbientGroup::FGAbelian(_) => unreachable!(),
    };
    let z2 = table(cyclic_group(2));
    let z4 = table(cyclic_group(4));
    let z2z2 = table(direct_product(&z2, &z2));
    vec![
        ("1", cyclic_group(1)),
        ("Z2", cyclic_group(2)),
        ("Z3", cyclic_group(3)),
        ("Z4", cyclic_group(4)),
        ("Z2xZ2", direct_product(&z2, &z2)),
        ("Z5", cyclic_group(5)),
        ("Z6", cyclic_group(6)),
        ("S3", permutation_group(3, &[vec![1, 0, 2], vec![1, 2, 0]])),
        ("Z7", cyclic_group(7)),
        ("Z8", cyclic_group(8)),
        ("Z4xZ2", direct_product(&z4, &z2)),
        ("Z2xZ2xZ2", direct_product(&z2z2, &z2)),
        ("D4", permutation_group(4, &[vec![1, 2, 3, 0], vec![0, 3, 2, 1]])),
        ("Q8", quaternion_group()),
    ]
}

/// A homomorphism to `{+1, -1}`.
///
/// Values are listed per element for tables and per factor generator for
/// abelian groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    values: Vec<Sign>,
}

impl Character {
    pub fn new(group: &AmbientGroup, values: Vec<i64>) -> Result<Character, GroupError> {
        let expected = match group {
            AmbientGroup::FiniteTable(g) => g.order(),
            AmbientGroup::FGAbelian(a) => a.rank(),
        };
        if values.len() != expected {
            return Err(GroupError::CharacterLength { expected, got: values.len() });
        }
        if let Some(&v) = values.iter().find(|&&v| v != 1 && v != -1) {
            return Err(GroupError::CharacterValue(v));
        }
        let values: Vec<Sign> = values.into_iter().map(|v| v as Sign).collect();
        match group {
            AmbientGroup::FiniteTable(g) => {
                let n = g.order();
                for a in 0..n {
                    for b in 0..n {
                        if values[g.mul(a, b)] != values[a] * values[b] {
                            return Err(GroupError::NotMultiplicative(a, b));
                        }
                    }
                }
            }
            AmbientGroup::FGAbelian(a) => {
                for (i, (&v, &f)) in values.iter().zip(a.factors()).enumerate() {
                    if v == -1 && f % 2 == 1 {
                        return Err(GroupError::OddOrderSign(i, f));
                    }
                }
            }
        }
        Ok(Character { values })
    }

    pub fn trivial(group: &AmbientGroup) -> Character {
        let n = match group {
            AmbientGroup::FiniteTable(g) => g.order(),
            AmbientGroup::FGAbelian(a) => a.rank(),
        };
        Character { values: vec![1; n] }
    }

    pub fn values(&self) -> &[Sign] {
        &self.values
    }

    pub fn eval(&self, x: &GroupElem) -> Sign {
        match x {
            GroupElem::Index(i) => self.values[*i],
            GroupElem::Tuple(v) => {
                let odd = v
                    .iter()
                    .zip(&self.values)
                    .filter(|(_, &s)| s == -1)
                    .map(|(&x, _)| x.rem_euclid(2))
                    .sum::<i64>()
                    % 2;
                if odd == 1 {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == 1)
    }
}

/// Every character of a finite table group, by exhaustive search.
pub fn all_characters(group: &AmbientGroup) -> Vec<Character> {
    match group {
        AmbientGroup::FiniteTable(g) => {
            let n = g.order();
            let mut out = Vec::new();
            for mask in 0u32..(1 << n) {
                if mask & (1 << g.identity()) != 0 {
                    continue;
                }
                let vals: Vec<i64> = (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
                if let Ok(c) = Character::new(group, vals) {
                    out.push(c);
                }
            }
            out
        }
        AmbientGroup::FGAbelian(a) => {
            let k = a.rank();
            let mut out = Vec::new();
            for mask in 0u32..(1 << k) {
                let vals: Vec<i64> = (0..k).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
                if let Ok(c) = Character::new(group, vals) {
                    out.push(c);
                }
            }
            out
        }
    }
}

fn sign_bit(s: Sign) -> i64 {
    if s < 0 {
        1
    } else {
        0
    }
}

/// A subgroup of `G x {+1,-1}` given by generators, with its closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedSubgroup {
    generators: Vec<(GroupElem, Sign)>,
    closure: Closure,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Closure {
    Finite(BTreeSet<(GroupElem, Sign)>),
    /// Lattice in `Z^{k+1}`; the last coordinate is the sign bit.
    Lattice(Lattice),
}

/// Closes a set of signed generators under products and inverses.
pub fn subgroup_closure(
    ambient: &AmbientGroup,
    generators: &[(GroupElem, Sign)],
) -> Result<SignedSubgroup, GroupError> {
    for (g, s) in generators {
        if !ambient.is_valid(g) {
            return Err(GroupError::InvalidElement(g.clone()));
        }
        if *s != 1 && *s != -1 {
            return Err(GroupError::InvalidSign(*s as i64));
        }
    }
    let generators: Vec<(GroupElem, Sign)> =
        generators.iter().map(|(g, s)| (ambient.canon(g), *s)).collect();
    let closure = match ambient {
        AmbientGroup::FiniteTable(_) => {
            let start = (ambient.identity(), 1);
            let mut seen = BTreeSet::from([start.clone()]);
            let mut queue = VecDeque::from([start]);
            while let Some((x, s)) = queue.pop_front() {
                for (g, t) in &generators {
                    let y = (ambient.mul(&x, g), s * t);
                    if seen.insert(y.clone()) {
                        queue.push_back(y);
                    }
                }
            }
            Closure::Finite(seen)
        }
        AmbientGroup::FGAbelian(a) => {
            let dim = a.rank() + 1;
            let mut gens: Vec<Vec<i64>> = generators
                .iter()
                .map(|(g, s)| {
                    let GroupElem::Tuple(v) = g else { unreachable!() };
                    let mut w = v.clone();
                    w.push(sign_bit(*s));
                    w
                })
                .collect();
            gens.extend(a.relations(dim));
            let mut two = vec![0; dim];
            two[dim - 1] = 2;
            gens.push(two);
            Closure::Lattice(Lattice::span(dim, &gens))
        }
    };
    Ok(SignedSubgroup { generators, closure })
}

impl SignedSubgroup {
    pub fn generators(&self) -> &[(GroupElem, Sign)] {
        &self.generators
    }

    pub fn contains(&self, x: &GroupElem, s: Sign) -> bool {
        match &self.closure {
            Closure::Finite(set) => set.contains(&(x.clone(), s)),
            Closure::Lattice(l) => {
                let GroupElem::Tuple(v) = x else { return false };
                let mut w = v.clone();
                w.push(sign_bit(s));
                l.contains(&w)
            }
        }
    }

    /// Whether `(1, -1)` lies in the closure.
    pub fn contains_neg_identity(&self) -> bool {
        match &self.closure {
            Closure::Finite(set) => set.iter().any(|(g, s)| *s == -1 && set.contains(&(g.clone(), 1))),
            Closure::Lattice(l) => {
                let mut w = vec![0; l.dim()];
                w[l.dim() - 1] = 1;
                l.contains(&w)
            }
        }
    }

    /// Closure elements, for the table backend.
    pub fn elements(&self) -> Option<&BTreeSet<(GroupElem, Sign)>> {
        match &self.closure {
            Closure::Finite(set) => Some(set),
            Closure::Lattice(_) => None,
        }
    }

    /// The sign attached to `x` when it is unique.
    pub fn sign_on(&self, x: &GroupElem) -> Option<Sign> {
        match (self.contains(x, 1), self.contains(x, -1)) {
            (true, false) => Some(1),
            (false, true) => Some(-1),
            _ => None,
        }
    }

    /// Whether the sign, as a function on the projection, is a homomorphism.
    /// Decided by direct scan for tables.
    pub fn sign_is_homomorphism(&self) -> bool {
        match &self.closure {
            Closure::Finite(set) => {
                let proj: BTreeSet<&GroupElem> = set.iter().map(|(g, _)| g).collect();
                proj.len() == set.len()
            }
            Closure::Lattice(_) => !self.contains_neg_identity(),
        }
    }

    /// Encoded generators in `Z^{k+1}` for lattice computations.
    pub(crate) fn lattice_gens(&self) -> Vec<(Vec<i64>, Sign)> {
        self.generators
            .iter()
            .filter_map(|(g, s)| match g {
                GroupElem::Tuple(v) => Some((v.clone(), *s)),
                GroupElem::Index(_) => None,
            })
            .collect()
    }
}

pub(crate) fn sign_to_bit(s: Sign) -> i64 {
    sign_bit(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_table() {
        let g = make_finite_group(vec![vec![0]]).unwrap();
        assert_eq!(g.order(), Some(1));
    }

    #[test]
    fn z2_table() {
        let g = make_finite_group(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.order(), Some(2));
    }

    #[test]
    fn degenerate_table_has_no_inverse() {
        let err = make_finite_group(vec![vec![0, 1], vec![1, 1]]).unwrap_err();
        assert_eq!(err, GroupError::NoInverse(1));
    }

    #[test]
    fn cyclic_examples() {
        assert_eq!(cyclic_group(1).order(), Some(1));
        assert_eq!(cyclic_group(2).order(), Some(2));
        let z = cyclic_group(0);
        assert_eq!(z.order(), None);
        assert_eq!(z.mul(&GroupElem::Tuple(vec![3]), &GroupElem::Tuple(vec![-5])), GroupElem::Tuple(vec![-2]));
    }

    #[test]
    fn closure_examples() {
        let z2 = cyclic_group(2);
        let s = subgroup_closure(&z2, &[]).unwrap();
        assert_eq!(s.elements().unwrap().len(), 1);
        let s = subgroup_closure(&z2, &[(GroupElem::Index(1), -1)]).unwrap();
        let want: BTreeSet<_> = [(GroupElem::Index(0), 1), (GroupElem::Index(1), -1)].into();
        assert_eq!(s.elements().unwrap(), &want);
        assert!(!s.contains_neg_identity());
        let triv = cyclic_group(1);
        let s = subgroup_closure(&triv, &[(GroupElem::Index(0), -1)]).unwrap();
        assert_eq!(s.elements().unwrap().len(), 2);
        assert!(s.contains_neg_identity());
    }

    #[test]
    fn lattice_closure_flags_negative_identity() {
        let z = cyclic_group(0);
        let s = subgroup_closure(&z, &[(GroupElem::Tuple(vec![2]), -1), (GroupElem::Tuple(vec![4]), -1)]).unwrap();
        assert!(s.contains_neg_identity());
        let s = subgroup_closure(&z, &[(GroupElem::Tuple(vec![2]), -1)]).unwrap();
        assert!(!s.contains_neg_identity());
        assert_eq!(s.sign_on(&GroupElem::Tuple(vec![-6])), Some(-1));
        assert_eq!(s.sign_on(&GroupElem::Tuple(vec![1])), None);
    }

    #[test]
    fn odd_factor_rejects_negative_character() {
        let g = AmbientGroup::FGAbelian(AbelianGroup::new(vec![3, 0]));
        assert!(Character::new(&g, vec![-1, 1]).is_err());
        assert!(Character::new(&g, vec![1, -1]).is_ok());
    }

    #[test]
    fn small_group_catalog() {
        let groups = small_groups();
        assert_eq!(groups.len(), 14);
        let orders: Vec<usize> = groups.iter().map(|(_, g)| g.order().unwrap()).collect();
        assert_eq!(orders, vec![1, 2, 3, 4, 4, 5, 6, 6, 7, 8, 8, 8, 8, 8]);
        let nonabelian: Vec<&str> = groups.iter().filter(|(_, g)| !g.is_abelian()).map(|(n, _)| *n).collect();
        assert_eq!(nonabelian, vec!["S3", "D4", "Q8"]);
        let count_order_two = |g: &AmbientGroup| {
            g.elements().unwrap().iter().filter(|x| **x != g.identity() && g.mul(x, x) == g.identity()).count()
        };
        assert_eq!(count_order_two(&groups[12].1), 5);
        assert_eq!(count_order_two(&groups[13].1), 1);
    }

    #[test]
    fn generator_counts() {
        assert_eq!(cyclic_group(1).abelian_generator_count(), Some(0));
        assert_eq!(cyclic_group(6).abelian_generator_count(), Some(1));
        let g = AmbientGroup::FGAbelian(AbelianGroup::new(vec![2, 3]));
        assert_eq!(g.abelian_generator_count(), Some(1));
        let g = AmbientGroup::FGAbelian(AbelianGroup::new(vec![2, 2, 0]));
        assert_eq!(g.abelian_generator_count(), Some(3));
    }
}
