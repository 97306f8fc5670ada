//! Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on
//! any failure.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use surfembed::band_theta::{
    band_fibre_finger_move, closed_surface_record, formal_union, is_b_characteristic, is_r_characteristic,
    is_s_characteristic, theta, BCharacteristic, BandCatalog, BandKind, BandRecord, SurfaceComponent, SurfaceModel,
};
use surfembed::decision_engine::{flowchart, rp2_euler_parity, stong_t_formula, EngineError};
use surfembed::gamma_algebra::{build_gamma, mu1_home, smith_oracle, Mu1Home, OrderTag, PairingContext};
use surfembed::group_core::{all_characters, small_groups, subgroup_closure, AmbientGroup, GroupElem, Sign, SignedSubgroup};
use surfembed::knot_tools::{
    arf, cp2_genus_verdict, shake_genus_pm1, sigma_d, signature, torus_knot_2, KnotError, SeifertMatrix,
};
use surfembed::whitney_calc::{t_alt, t_count, to_convenient, CollectionKind, DoublePoint, WhitneyCollection, WhitneyDisc};
use surfembed_cli::commands::{decide_text, examples_show, CliError, EXIT_INCONSISTENT};
use surfembed_cli::corpus::INSTANCES;
use surfembed_cli::schema::parse_instance;
use surfembed_cli::verdict::{Mode, VerdictFile};

const GAMMA_SWEEP_LIMIT: Duration = Duration::from_secs(60);
const KNOT_LIMIT: Duration = Duration::from_secs(10);
const SUBGROUP_PAIRS_PER_CHARACTER: usize = 100;
const ARF_SAMPLES: usize = 10_000;
const THETA_SAMPLES: usize = 1_000;
const DETERMINISM_RUNS: usize = 10;
const LINKED_CATALOGS: usize = 1_000;

struct Report {
    failures: usize,
}

impl Report {
    fn record(&mut self, id: u32, title: &str, result: Result<String, String>) {
        match result {
            Ok(detail) => println!("PASS {id:>2} {title}: {detail}"),
            Err(detail) => {
                self.failures += 1;
                println!("FAIL {id:>2} {title}: {detail}");
            }
        }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_subgroup(g: &AmbientGroup, rng: &mut ChaCha8Rng, force_neg_identity: bool) -> SignedSubgroup {
    let elems = g.elements().expect("finite");
    let mut gens: Vec<(GroupElem, Sign)> = (0..rng.gen_range(0..=2))
        .map(|_| (elems[rng.gen_range(0..elems.len())].clone(), if rng.gen_bool(0.5) { 1 } else { -1 }))
        .collect();
    if force_neg_identity {
        gens.push((g.identity(), -1));
    }
    subgroup_closure(g, &gens).expect("closure")
}

/// Criteria 1 and 2 on one sweep: orbit invariants against the Smith form
/// of the relation matrix, and the identity coefficient's home against the
/// identity orbit's tag.
fn gamma_sweep() -> (Result<String, String>, Result<String, String>) {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let (mut contexts, mut selfs) = (0usize, 0usize);
    let mut first_bad: Option<String> = None;
    let mut home_bad: Option<String> = None;
    let groups = small_groups();
    for (name, g) in &groups {
        for w in all_characters(g) {
            for _ in 0..SUBGROUP_PAIRS_PER_CHARACTER {
                let sf = random_subgroup(g, &mut rng, false);
                let sg = random_subgroup(g, &mut rng, false);
                for ctx in [
                    PairingContext::pair(g.clone(), w.clone(), sf.clone(), sg),
                    PairingContext::self_pair(g.clone(), w.clone(), sf.clone()),
                ] {
                    contexts += 1;
                    let gamma = build_gamma(ctx.clone());
                    let (rank, torsion) = smith_oracle(&ctx).expect("finite");
                    let oracle = (rank, torsion.iter().filter(|&&d| d == 2).count());
                    if torsion.iter().any(|&d| d != 2) || gamma.invariants() != Some(oracle) {
                        first_bad.get_or_insert(format!("{name}: orbits {:?} vs oracle {rank}, {torsion:?}", gamma.invariants()));
                    }
                    if ctx.self_pairing {
                        selfs += 1;
                        let home = mu1_home(&ctx).expect("self pairing");
                        if (home == Mu1Home::Z) != (gamma.identity_tag() == OrderTag::Infinite) {
                            home_bad.get_or_insert(format!("{name}: home {home:?}, tag {:?}", gamma.identity_tag()));
                        }
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let one = match first_bad {
        Some(b) => Err(b),
        None if elapsed > GAMMA_SWEEP_LIMIT => Err(format!("took {elapsed:.1?}, limit {GAMMA_SWEEP_LIMIT:?}")),
        None => Ok(format!("{} groups, {contexts} contexts agree exactly in {elapsed:.1?}", groups.len())),
    };
    let two = match home_bad {
        Some(b) => Err(b),
        None => Ok(format!("{selfs} self-pairing contexts agree")),
    };
    (one, two)
}

fn rp2_torsion() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let mut checked = 0;
    for (name, g) in small_groups() {
        for w in all_characters(&g) {
            for _ in 0..20 {
                let sf = random_subgroup(&g, &mut rng, true);
                let sg = random_subgroup(&g, &mut rng, false);
                for ctx in [PairingContext::self_pair(g.clone(), w.clone(), sf.clone()), PairingContext::pair(g.clone(), w.clone(), sf.clone(), sg)] {
                    let orbits = build_gamma(ctx).orbits().expect("finite");
                    ensure(orbits.iter().all(|o| o.tag == OrderTag::Two), || format!("{name}: an orbit is not 2-torsion"))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} contexts, every orbit tagged Z/2"))
}

fn triple_trefoil() -> SeifertMatrix {
    let t = torus_knot_2(1);
    t.block_sum(&t).block_sum(&t)
}

fn knot_numbers() -> Result<String, String> {
    let start = Instant::now();
    let v = triple_trefoil();
    let e = |e: KnotError| e.to_string();
    ensure(arf(&v).map_err(e)? == 1, || "Arf is not 1".into())?;
    ensure(signature(&v).map_err(e)? == -6, || "signature is not -6".into())?;
    for d in 2..=12 {
        let s = sigma_d(&v, d).map_err(e)?;
        ensure(s == -6, || format!("sigma_{d} = {s}"))?;
    }
    let verdict = cp2_genus_verdict(&v).map_err(e)?;
    ensure(verdict.exact == Some(1) && !verdict.incomplete, || format!("cp2 verdict {verdict:?}"))?;
    ensure(shake_genus_pm1(&v).map_err(e)? == 1, || "shake genus is not 1".into())?;
    let elapsed = start.elapsed();
    ensure(elapsed <= KNOT_LIMIT, || format!("took {elapsed:.1?}"))?;
    Ok(format!("Arf 1, signatures -6 for d = 2..12, genus exactly 1, shake genus 1 in {elapsed:.1?}"))
}

/// A random valid Seifert matrix of even size at most 6 with entries in
/// `[-2, 2]`.
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
        return SeifertMatrix::new(v).expect("unimodular by construction");
    }
    loop {
        let v: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-2..=2)).collect()).collect();
        if let Ok(m) = SeifertMatrix::new(v) {
            return m;
        }
    }
}

fn arf_agreement() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    let mut ones = 0;
    for k in 0..ARF_SAMPLES {
        let v = random_seifert(&mut rng);
        match arf(&v) {
            Ok(a) => ones += a as usize,
            Err(e) => {
                let code = CliError::from(e.clone()).code;
                return Err(format!("sample {k}: {e} (exit {code}), matrix {:?}", v.entries()));
            }
        }
    }
    Ok(format!("{ARF_SAMPLES} matrices, both methods agree ({ones} with Arf 1)"))
}

fn stong() -> Result<String, String> {
    let a = stong_t_formula(1, 9).map_err(|e| e.to_string())?;
    let b = stong_t_formula(-7, 1).map_err(|e| e.to_string())?;
    ensure(a == 1 && b == 1, || format!("got {a} and {b}"))?;
    Ok("t = 1 for (1, 9) and (-7, 1)".into())
}

fn rp2_parity() -> Result<String, String> {
    let mut n = 0;
    for e in (-62i64..=62).filter(|e| e.rem_euclid(4) == 2) {
        let closed = u8::from(!matches!(e.rem_euclid(16), 2 | 14));
        let iterated = rp2_euler_parity(e).map_err(|x| x.to_string())?;
        ensure(iterated == closed, || format!("e = {e}: iterated {iterated}, closed form {closed}"))?;
        n += 1;
    }
    Ok(format!("{n} Euler numbers, zero exactly at +-2 mod 16"))
}

fn random_surface(rng: &mut ChaCha8Rng) -> SurfaceModel {
    let orientable = rng.gen_bool(0.5);
    SurfaceModel::new(vec![SurfaceComponent { genus: rng.gen_range(1..=3), orientable, boundary: 0 }])
}

fn random_class(rng: &mut ChaCha8Rng, dim: usize) -> Vec<u8> {
    (0..dim).map(|_| rng.gen_range(0..2)).collect()
}

/// An admissible record of a random kind with boundary on component 0.
fn random_band(rng: &mut ChaCha8Rng, surface: &SurfaceModel, id: usize, class_dim: usize) -> BandRecord {
    let dim = surface.dim();
    let kind = match rng.gen_range(0..3) {
        0 => BandKind::Annulus,
        1 => BandKind::Moebius,
        _ => BandKind::Surface,
    };
    let circles = match kind {
        BandKind::Annulus => 2,
        BandKind::Moebius => 1,
        BandKind::Surface => rng.gen_range(0..=2),
    };
    let mut classes: Vec<Vec<u8>> = (0..circles).map(|_| random_class(rng, dim)).collect();
    if kind == BandKind::Moebius {
        while surface.w1_of(&classes[0]) == 1 {
            classes[0] = random_class(rng, dim);
        }
    }
    if kind == BandKind::Annulus && surface.w1_of(&classes[0]) != surface.w1_of(&classes[1]) {
        classes[1] = classes[0].clone();
    }
    let boundary_w1: Vec<u8> = classes.iter().map(|c| surface.w1_of(c)).collect();
    let core_w1 = boundary_w1.iter().fold(0, |a, b| a ^ b);
    BandRecord {
        id: format!("b{id}"),
        kind,
        class: random_class(rng, class_dim),
        boundary_components: vec![0; circles],
        boundary_classes: classes,
        boundary_w1,
        core_w1,
        mu_boundary: rng.gen_range(0..2),
        boundary_arcs: rng.gen_range(0..2),
        interior: rng.gen_range(0..2),
        euler: rng.gen_range(0..2),
    }
}

fn random_weak(rng: &mut ChaCha8Rng) -> (Vec<DoublePoint>, WhitneyCollection) {
    let n = rng.gen_range(0..=5);
    let mut points = Vec::new();
    let mut discs = Vec::new();
    for d in 0..n {
        for (k, sign) in [(0, 1), (1, -1)] {
            points.push(DoublePoint { id: 2 * d + k, components: (0, 0), sign, eta: GroupElem::Index(0) });
        }
        discs.push(WhitneyDisc {
            id: d,
            points: (2 * d, 2 * d + 1),
            interior: vec![rng.gen_range(0..4), rng.gen_range(0..4)],
            mu_boundary: rng.gen_range(0..2),
            e: rng.gen_range(-3..=3),
        });
    }
    let mut boundary = vec![vec![0u64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let c = rng.gen_range(0..3);
            boundary[i][j] = c;
            boundary[j][i] = c;
        }
    }
    (points, WhitneyCollection { kind: CollectionKind::Weak, discs, boundary })
}

fn theta_machinery() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(109);
    let err = |e: &dyn std::fmt::Display| e.to_string();
    for k in 0..THETA_SAMPLES {
        let s = random_surface(&mut rng);
        let a = random_band(&mut rng, &s, 0, 3);
        let b = random_band(&mut rng, &s, 1, 3);
        let cross = s.lambda(&a.boundary_class(), &b.boundary_class());
        let u = theta(&formal_union(&a, &b, &s)).map_err(|e| err(&e))?;
        let (ta, tb) = (theta(&a).map_err(|e| err(&e))?, theta(&b).map_err(|e| err(&e))?);
        ensure(u == ta ^ tb ^ cross, || format!("quadraticity fails on sample {k}"))?;
    }
    for k in 0..THETA_SAMPLES {
        let s = random_surface(&mut rng);
        let band = random_band(&mut rng, &s, 0, 1);
        let (points, coll) = if k % 2 == 0 {
            (Vec::new(), WhitneyCollection::empty(CollectionKind::Convenient))
        } else {
            let pts = vec![
                DoublePoint { id: 0, components: (0, 0), sign: 1, eta: GroupElem::Index(0) },
                DoublePoint { id: 1, components: (0, 0), sign: -1, eta: GroupElem::Index(0) },
            ];
            let c = WhitneyCollection {
                kind: CollectionKind::Convenient,
                discs: vec![WhitneyDisc { id: 0, points: (0, 1), interior: vec![rng.gen_range(0..3)], mu_boundary: 0, e: 0 }],
                boundary: vec![vec![0]],
            };
            (pts, c)
        };
        let out = band_fibre_finger_move(&points, &[0], &coll, &band, &s, GroupElem::Index(0)).map_err(|e| err(&e))?;
        ensure(out.delta_t == theta(&band).map_err(|e| err(&e))?, || format!("finger move sample {k}: delta t differs"))?;
    }
    for k in 0..THETA_SAMPLES {
        let (points, weak) = random_weak(&mut rng);
        let conv = to_convenient(&points, &[0], &weak).map_err(|e| err(&e))?;
        let before = t_alt(&points, &[0], &weak).map_err(|e| err(&e))?;
        let after = t_count(&points, &[0], &conv).map_err(|e| err(&e))?;
        ensure(conv.is_convenient() && before == after, || format!("conversion sample {k} changes t"))?;
    }
    Ok(format!("{THETA_SAMPLES} samples each of quadraticity, finger moves and conversion"))
}

fn verdict(name: &str, mode: Mode) -> Result<VerdictFile, String> {
    let text = examples_show(name).map_err(|e| e.message)?;
    let out = decide_text(&text, mode).map_err(|e| e.render())?;
    VerdictFile::from_text(&out).map_err(|e| e.to_string())
}

fn worked_examples() -> Result<String, String> {
    let check = |name: &str, mode: Mode, outcome: &str, b_char: &str, t: Option<u8>, km: Option<Option<u8>>| {
        let v = verdict(name, mode)?;
        ensure(v.outcome == outcome && v.b_char.status == b_char && v.t == t && km.is_none_or(|k| k == v.km), || {
            format!("{name}: outcome {}, b_char {}, t {:?}, km {:?}", v.outcome, v.b_char.status, v.t, v.km)
        })
    };
    check("torus_s3s1", Mode::Regular, "NotRegHomotopicToEmbedding", "yes", Some(1), Some(Some(1)))?;
    check("tubed_sphere", Mode::Regular, "RegHomotopicToEmbedding", "no", None, Some(Some(0)))?;
    check("klein_bottle_e0", Mode::Regular, "NoConclusion", "yes", Some(0), None)?;
    check("klein_bottle_e4", Mode::Regular, "NoConclusion", "no", None, None)?;
    check("klein_bottle_em4", Mode::Regular, "NoConclusion", "no", None, None)?;
    check("star_cp2_sphere", Mode::Regular, "NotRegHomotopicToEmbedding", "yes", Some(1), Some(Some(1)))?;
    check("rp2_case2", Mode::Homotopy, "HomotopicToEmbedding", "yes", Some(1), Some(None))?;
    Ok("torus b-characteristic with t = 1, tube not b-characteristic, Klein bottles b-characteristic iff e = 0".into())
}

fn linked_catalog(rng: &mut ChaCha8Rng) -> (Vec<(u8, u8)>, Vec<(u8, u8)>, BandCatalog, SurfaceModel) {
    let s = random_surface(rng);
    let spheres: Vec<(u8, u8)> = (0..rng.gen_range(0..4)).map(|_| (rng.gen_range(0..2), rng.gen_range(0..2))).collect();
    let mut planes: Vec<(u8, u8)> = (0..rng.gen_range(1..3)).map(|_| (rng.gen_range(0..2), rng.gen_range(0..2))).collect();
    let base = planes[0];
    for &(fa, aa) in &spheres {
        planes.push((base.0 ^ fa, base.1 ^ aa));
    }
    let mut records = Vec::new();
    if rng.gen_bool(0.5) {
        records.push(random_band(rng, &s, 0, 2));
    }
    for (k, &(f, x)) in spheres.iter().chain(planes.iter()).enumerate() {
        records.push(closed_surface_record(&format!("c{k}"), random_class(rng, 2), f, x));
    }
    (spheres, planes, BandCatalog { class_dim: 2, records }, s)
}

fn consistency_guards() -> Result<String, String> {
    let bin = env!("CARGO_BIN_EXE_surfembed");
    let dir = format!("{}/examples", env!("CARGO_MANIFEST_DIR"));
    for e in INSTANCES {
        let path = format!("{dir}/{}.json", e.name);
        let outputs: Vec<Vec<u8>> = (0..DETERMINISM_RUNS)
            .map(|_| Command::new(bin).args(["decide", &path]).output().map(|o| [o.stdout, o.stderr].concat()))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        ensure(outputs.windows(2).all(|w| w[0] == w[1]), || format!("{} output varies between runs", e.name))?;
    }
    let inst = parse_instance(examples_show("genus2_inconsistent").map_err(|e| e.message)?.as_str())
        .map_err(|i| format!("{i:?}"))?;
    ensure(matches!(flowchart(&inst), Err(EngineError::EulerBoundViolation { .. })), || {
        "Euler bound violation not detected".into()
    })?;
    let code = Command::new(bin).args(["decide", &format!("{dir}/genus2_inconsistent.json")]).output().map_err(|e| e.to_string())?.status;
    ensure(code.code() == Some(i32::from(EXIT_INCONSISTENT)), || format!("inconsistent instance exits {code}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(113);
    let (mut b, mut r, mut s) = (0, 0, 0);
    for k in 0..LINKED_CATALOGS {
        let (spheres, planes, cat, surf) = linked_catalog(&mut rng);
        let bc = is_b_characteristic(&cat, &surf) == BCharacteristic::Yes;
        let rc = is_r_characteristic(&planes);
        let sc = is_s_characteristic(&spheres);
        ensure((!bc || rc) && (!rc || sc), || format!("chain fails on catalog {k}"))?;
        b += usize::from(bc);
        r += usize::from(rc);
        s += usize::from(sc);
    }
    Ok(format!(
        "{} corpus files byte-identical over {DETERMINISM_RUNS} runs, Euler bound violation exits 3, chain holds on {LINKED_CATALOGS} catalogs ({b} <= {r} <= {s})",
        INSTANCES.len()
    ))
}

fn main() -> ExitCode {
    let mut report = Report { failures: 0 };
    let (one, two) = gamma_sweep();
    report.record(1, "intersection group matches Smith normal form oracle", one);
    report.record(2, "identity coefficient home matches identity orbit tag", two);
    report.record(3, "negated identity forces 2-torsion orbits", rp2_torsion());
    report.record(4, "knot numbers for the triple trefoil", knot_numbers());
    report.record(5, "Arf invariant methods agree", arf_agreement());
    report.record(6, "signature formula for t", stong());
    report.record(7, "projective plane Euler number parity", rp2_parity());
    report.record(8, "band invariant machinery", theta_machinery());
    report.record(9, "worked example verdicts", worked_examples());
    report.record(10, "consistency guards", consistency_guards());
    if report.failures == 0 {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} criteria fail", report.failures);
        ExitCode::FAILURE
    }
}
