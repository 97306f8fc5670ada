//! Integer lattices in `Z^m` kept in Hermite normal form.
//!
//! Used by the finitely generated abelian backend: subgroups, cosets and
//! membership all reduce to questions about a sublattice of `Z^m`.

/// A sublattice of `Z^m` stored as an echelon basis with positive pivots.
///
/// Entries above each pivot are reduced into `[0, pivot)`, so [`Lattice::reduce`]
/// returns a canonical representative of every coset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    rows: Vec<Vec<i128>>,
    pivots: Vec<usize>,
}

impl Lattice {
    /// The lattice spanned by `gens`, each of length `dim`.
    pub fn span(dim: usize, gens: &[Vec<i64>]) -> Lattice {
        let mut work: Vec<Vec<i128>> = gens
            .iter()
            .map(|g| {
                assert_eq!(g.len(), dim, "generator length mismatch");
                g.iter().map(|&x| x as i128).collect()
            })
            .filter(|g: &Vec<i128>| g.iter().any(|&x| x != 0))
            .collect();
        let mut rows = Vec::new();
        let mut pivots = Vec::new();
        for col in 0..dim {
            // Euclid on the column until at most one row is nonzero there.
            loop {
                let mut nz: Vec<usize> = (0..work.len()).filter(|&i| work[i][col] != 0).collect();
                if nz.len() <= 1 {
                    break;
                }
                nz.sort_by_key(|&i| work[i][col].abs());
                let p = nz[0];
                for &i in &nz[1..] {
                    let q = work[i][col].div_euclid(work[p][col]);
                    let prow = work[p].clone();
                    for (x, y) in work[i].iter_mut().zip(prow.iter()) {
                        *x -= q * y;
                    }
                }
            }
            if let Some(i) = (0..work.len()).find(|&i| work[i][col] != 0) {
                let mut row = work.swap_remove(i);
                if row[col] < 0 {
                    row.iter_mut().for_each(|x| *x = -*x);
                }
                rows.push(row);
                pivots.push(col);
            }
            work.retain(|r| r.iter().any(|&x| x != 0));
        }
        let mut lat = Lattice { dim, rows, pivots };
        lat.normalize();
        lat
    }

    fn normalize(&mut self) {
        for k in 0..self.rows.len() {
            let col = self.pivots[k];
            let p = self.rows[k][col];
            let prow = self.rows[k].clone();
            for j in 0..k {
                let q = self.rows[j][col].div_euclid(p);
                if q != 0 {
                    for (x, y) in self.rows[j].iter_mut().zip(prow.iter()) {
                        *x -= q * y;
                    }
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Whether the quotient `Z^m / L` is finite.
    pub fn has_full_rank(&self) -> bool {
        self.rows.len() == self.dim
    }

    /// Pivot entries in column order; their product is the index when full rank.
    pub fn pivot_entries(&self) -> Vec<(usize, i64)> {
        self.pivots
            .iter()
            .zip(&self.rows)
            .map(|(&c, r)| (c, r[c] as i64))
            .collect()
    }

    /// Canonical coset representative of `v + L`.
    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let mut w: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        for (row, &col) in self.rows.iter().zip(&self.pivots) {
            let q = w[col].div_euclid(row[col]);
            if q != 0 {
                for (x, y) in w.iter_mut().zip(row.iter()) {
                    *x -= q * y;
                }
            }
        }
        w.into_iter()
            .map(|x| i64::try_from(x).expect("lattice entry overflow"))
            .collect()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Canonical representatives of `Z^m / L` when the quotient is finite.
    pub fn coset_box(&self) -> Option<Vec<Vec<i64>>> {
        if !self.has_full_rank() {
            return None;
        }
        let mut out = vec![vec![0i64; self.dim]];
        for (col, p) in self.pivot_entries() {
            let mut next = Vec::with_capacity(out.len() * p as usize);
            for v in &out {
                for x in 0..p {
                    let mut w = v.clone();
                    w[col] = x;
                    next.push(w);
                }
            }
            out = next;
        }
        out.sort();
        Some(out)
    }
}
