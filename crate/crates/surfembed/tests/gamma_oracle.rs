use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use surfembed::gamma_algebra::{
    build_gamma, coefficient_at, mu1_home, reduce, smith_oracle, Coefficient, Mu1Home, OrderTag,
    PairingContext,
};
use surfembed::group_core::{
    all_characters, small_groups, subgroup_closure, AbelianGroup, AmbientGroup, GroupElem, Sign,
    SignedSubgroup,
};

fn random_subgroup(g: &AmbientGroup, rng: &mut ChaCha8Rng) -> SignedSubgroup {
    let elems = g.elements().unwrap();
    let k = rng.gen_range(0..=2);
    let gens: Vec<(GroupElem, Sign)> = (0..k)
        .map(|_| {
            let x = elems[rng.gen_range(0..elems.len())].clone();
            (x, if rng.gen_bool(0.5) { 1 } else { -1 })
        })
        .collect();
    subgroup_closure(g, &gens).unwrap()
}

fn check_context(ctx: PairingContext) {
    let (rank, torsion) = smith_oracle(&ctx).unwrap();
    assert!(torsion.iter().all(|&d| d == 2), "torsion {torsion:?}");
    let gamma = build_gamma(ctx.clone());
    assert_eq!(gamma.invariants(), Some((rank, torsion.len())));
    if ctx.self_pairing {
        let home = mu1_home(&ctx).unwrap();
        let tag = gamma.identity_tag();
        assert_eq!(home == Mu1Home::Z, tag == OrderTag::Infinite);
    }
    if ctx.s_f.contains_neg_identity() {
        assert!(gamma.orbits().unwrap().iter().all(|o| o.tag == OrderTag::Two));
    }
}

#[test]
fn orbit_decomposition_matches_smith_form_on_small_groups() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (_, g) in small_groups() {
        for w in all_characters(&g) {
            for _ in 0..100 {
                let sf = random_subgroup(&g, &mut rng);
                let sg = random_subgroup(&g, &mut rng);
                check_context(PairingContext::pair(g.clone(), w.clone(), sf.clone(), sg));
                check_context(PairingContext::self_pair(g.clone(), w.clone(), sf));
            }
        }
    }
}

#[test]
fn lattice_backend_matches_smith_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let factor_lists: [&[u64]; 7] = [&[1], &[2], &[3], &[2, 2], &[4, 2], &[2, 2, 2], &[6, 2]];
    for f in factor_lists {
        let g = AmbientGroup::FGAbelian(AbelianGroup::new(f.to_vec()));
        for w in all_characters(&g) {
            for _ in 0..100 {
                let sf = random_subgroup(&g, &mut rng);
                let sg = random_subgroup(&g, &mut rng);
                check_context(PairingContext::pair(g.clone(), w.clone(), sf.clone(), sg));
                check_context(PairingContext::self_pair(g.clone(), w.clone(), sf));
            }
        }
    }
}

fn contexts() -> Vec<PairingContext> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut out = Vec::new();
    for (_, g) in small_groups() {
        for w in all_characters(&g) {
            let sf = random_subgroup(&g, &mut rng);
            let sg = random_subgroup(&g, &mut rng);
            out.push(PairingContext::pair(g.clone(), w.clone(), sf.clone(), sg));
            out.push(PairingContext::self_pair(g.clone(), w.clone(), sf));
        }
    }
    out
}

fn list_strategy() -> impl Strategy<Value = Vec<(bool, usize)>> {
    prop::collection::vec((any::<bool>(), 0usize..8), 0..12)
}

fn to_list(g: &AmbientGroup, raw: &[(bool, usize)]) -> Vec<(Sign, GroupElem)> {
    let n = g.order().unwrap();
    raw.iter()
        .map(|&(s, i)| (if s { 1 } else { -1 }, GroupElem::Index(i % n)))
        .collect()
}

proptest! {
    #[test]
    fn reduce_is_additive(ci in 0usize..200, a in list_strategy(), b in list_strategy()) {
        let all = contexts();
        let ctx = all[ci % all.len()].clone();
        let g = ctx.ambient.clone();
        let gamma = build_gamma(ctx);
        let (la, lb) = (to_list(&g, &a), to_list(&g, &b));
        let joined: Vec<_> = la.iter().chain(lb.iter()).cloned().collect();
        prop_assert_eq!(reduce(&joined, &gamma), reduce(&la, &gamma).add(&reduce(&lb, &gamma)));
    }

    #[test]
    fn finger_pairs_do_not_change_reduction(ci in 0usize..200, a in list_strategy(), x in 0usize..8) {
        let all = contexts();
        let ctx = all[ci % all.len()].clone();
        let g = ctx.ambient.clone();
        let gamma = build_gamma(ctx);
        let la = to_list(&g, &a);
        let x = GroupElem::Index(x % g.order().unwrap());
        let mut lb = la.clone();
        lb.push((1, x.clone()));
        lb.push((-1, x));
        prop_assert_eq!(reduce(&la, &gamma), reduce(&lb, &gamma));
    }

    #[test]
    fn opposite_classes_have_opposite_coefficients(ci in 0usize..200, a in list_strategy()) {
        let all = contexts();
        let ctx = all[ci % all.len()].clone();
        let g = ctx.ambient.clone();
        let gamma = build_gamma(ctx);
        let elem = reduce(&to_list(&g, &a), &gamma);
        for x in g.elements().unwrap() {
            for y in g.elements().unwrap() {
                let (lx, ly) = (gamma.locate(&x), gamma.locate(&y));
                if lx.rep == ly.rep && lx.tag == OrderTag::Infinite && lx.section_sign == -ly.section_sign {
                    let (Coefficient::Int(cx), Coefficient::Int(cy)) =
                        (coefficient_at(&elem, &gamma, &x), coefficient_at(&elem, &gamma, &y))
                    else {
                        panic!("infinite orbit gave a mod 2 coefficient");
                    };
                    prop_assert_eq!(cx, -cy);
                }
            }
        }
    }
}
