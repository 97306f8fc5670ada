use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use surfembed::knot_tools::{
    alexander_at_minus_one, arf, arf_by_determinant, arf_by_quadratic_form, cp2_genus_lower_bound, levine_tristram,
    torus_knot_2, KnotError, SeifertMatrix,
};

/// A random valid Seifert matrix of even size at most 6 with entries in
/// `[-2, 2]`: either a symmetric perturbation of the standard skew part,
/// or rejection sampling on unimodularity.
fn random_seifert(rng: &mut ChaCha8Rng) -> SeifertMatrix {
    let n = 2 * rng.gen_range(1..=3);
    if rng.gen_bool(0.5) {
        let mut v = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in i..n {
                let base = i64::from(j == i + 1 && i % 2 == 0);
                let s = rng.gen_range(-2..=2 - base);
                v[i][j] = s + base;
                if i != j {
                    v[j][i] = s;
                }
            }
        }
        return SeifertMatrix::new(v).unwrap();
    }
    loop {
        let v: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-2..=2)).collect()).collect();
        if let Ok(m) = SeifertMatrix::new(v) {
            return m;
        }
    }
}

#[test]
fn arf_methods_agree_on_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for _ in 0..2000 {
        let v = random_seifert(&mut rng);
        assert_eq!(arf_by_determinant(&v), arf_by_quadratic_form(&v), "{:?}", v.entries());
    }
}

#[test]
fn signature_properties_on_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    let omegas = [(1, 1), (1, 2), (2, 3), (1, 5), (3, 4)];
    let mut checked = 0;
    for _ in 0..150 {
        let v = random_seifert(&mut rng);
        let (p, q) = omegas[rng.gen_range(0..omegas.len())];
        match levine_tristram(&v, p, q) {
            Ok(s) => {
                checked += 1;
                assert_eq!(s.rem_euclid(2), 0);
                assert!(s.unsigned_abs() as usize <= v.size());
                assert_eq!(levine_tristram(&v, -p, q), Ok(s));
                let w = random_seifert(&mut rng);
                if let Ok(t) = levine_tristram(&w, p, q) {
                    assert_eq!(levine_tristram(&v.block_sum(&w), p, q), Ok(s + t));
                }
            }
            Err(KnotError::SingularAtOmega { .. }) => {}
            Err(e) => panic!("{e}"),
        }
    }
    assert!(checked > 50);
}

#[test]
fn block_sums_multiply_alexander_values() {
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    for _ in 0..300 {
        let (a, b) = (random_seifert(&mut rng), random_seifert(&mut rng));
        assert_eq!(alexander_at_minus_one(&a.block_sum(&b)), alexander_at_minus_one(&a) * alexander_at_minus_one(&b));
        assert_eq!(arf(&a.block_sum(&b)).unwrap(), arf(&a).unwrap() ^ arf(&b).unwrap());
    }
}

#[test]
fn torus_knot_signatures() {
    for k in 1..=3 {
        assert_eq!(levine_tristram(&torus_knot_2(k), 1, 1), Ok(-2 * k as i64));
    }
}

#[test]
fn cp2_bound_grows_with_degree() {
    let v = torus_knot_2(1);
    let evens: Vec<i64> = (1..8).map(|k| cp2_genus_lower_bound(&v, 2 * k).unwrap()).collect();
    assert!(evens.windows(2).all(|w| w[0] <= w[1]));
}
