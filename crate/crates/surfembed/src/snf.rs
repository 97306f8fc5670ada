//! Smith normal form of small integer matrices.

/// Diagonal of the Smith normal form of `m` (rows of equal length `cols`).
///
/// Returns the nonzero invariant factors `d_1 | d_2 | ...`, all positive.
pub fn smith_diagonal(m: &[Vec<i64>], cols: usize) -> Vec<i64> {
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| {
            assert_eq!(r.len(), cols, "row length mismatch");
            r.iter().map(|&x| x as i128).collect()
        })
        .collect();
    let rows = a.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let Some((pi, pj)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| (a[i][j].abs(), i, j))
        else {
            break;
        };
        a.swap(t, pi);
        for r in a.iter_mut() {
            r.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            let q = a[i][t].div_euclid(a[t][t]);
            if q != 0 {
                let pr = a[t].clone();
                for (x, y) in a[i].iter_mut().zip(pr.iter()) {
                    *x -= q * y;
                }
            }
            if a[i][t] != 0 {
                clean = false;
            }
        }
        for j in t + 1..cols {
            let q = a[t][j].div_euclid(a[t][t]);
            if q != 0 {
                for r in a.iter_mut() {
                    let v = r[t];
                    r[j] -= q * v;
                }
            }
            if a[t][j] != 0 {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        let p = a[t][t];
        if let Some(i) = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0)) {
            let add = a[i].clone();
            for (x, y) in a[t].iter_mut().zip(add.iter()) {
                *x += y;
            }
            continue;
        }
        diag.push(i64::try_from(p.abs()).expect("invariant factor overflow"));
        t += 1;
    }
    diag
}

/// Invariant factors of `Z/d_1 x ... x Z/d_k`, with `0` for free factors,
/// listed in divisibility order with zeros last.
pub fn invariant_factors_diag(d: &[i64]) -> Vec<i64> {
    let n = d.len();
    let m: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { d[i] } else { 0 }).collect())
        .collect();
    let mut out = smith_diagonal(&m, n);
    out.resize(n, 0);
    out
}

/// Free rank and torsion coefficients (entries > 1) of `Z^cols / rowspace(m)`.
pub fn cokernel_invariants(m: &[Vec<i64>], cols: usize) -> (usize, Vec<i64>) {
    let diag = smith_diagonal(m, cols);
    let torsion = diag.iter().copied().filter(|&d| d > 1).collect();
    (cols - diag.len(), torsion)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two_relation_matrix() {
        // e_1 - e_1 and e_x + e_x: one free summand and one Z/2.
        let m = vec![vec![0, 0], vec![0, 2]];
        assert_eq!(cokernel_invariants(&m, 2), (1, vec![2]));
    }

    #[test]
    fn divisibility_chain() {
        assert_eq!(invariant_factors_diag(&[2, 3, 0]), vec![1, 6, 0]);
        assert_eq!(invariant_factors_diag(&[4, 6]), vec![2, 12]);
    }

    #[test]
    fn full_example() {
        let m = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        assert_eq!(smith_diagonal(&m, 3), vec![2, 6, 12]);
    }
}
