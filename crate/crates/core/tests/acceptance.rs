//! Acceptance gate: twelve criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the lines always reach stdout.
//! Tolerances are pinned below; a failing criterion exits nonzero.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::Rng;

use spectral_walls::classify::concise::concise_hull;
use spectral_walls::classify::{
    admissibility_lint, classify_direction, nonergodic_concise, nonwm_concise, realize, ConciseSet,
    DEFAULT_ENUMERATION_BOUND,
};
use spectral_walls::exec::Execution;
use spectral_walls::fourier::{
    coset_constancy_check, rajchman_probe, representative_wall_mass, wiener_mass,
    EstimatorConfig, FtConfig, Transform,
};
use spectral_walls::linalg::groups::Ring;
use spectral_walls::linalg::{int_vector, rational_vector, unit_vector, zero_vector, Subspace};
use spectral_walls::measure::{Raw, Space, SymbolicMeasure, DEFAULT_CLOSURE_CAP};
use spectral_walls::oracle::{
    bergelson_ward_vectors, bundled_models, crosscheck, expected_measure, gram_check, ActionModel,
    BaseModel,
};
use spectral_walls::scalar::{Field, FieldScalar, FieldSpec};

const PUSHFORWARD_TOL: f64 = 1e-9;
const WIENER_TOL: f64 = 0.05;
const WALL_FRACTION: f64 = 0.5;
const CONSTANCY_TOL: f64 = 1e-9;
const DECAY_LEVEL: f64 = 0.01;
const DECAY_RADIUS: f64 = 1000.0;
const CROSSCHECK_TOL: f64 = 1e-12;
const CROSSCHECK_BOUND: usize = 10;
const GRAM_TOL: f64 = 1e-9;
const PROPERTY_CASES: u32 = 1000;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q() -> Field {
    FieldSpec::rationals()
}

fn line(f: &Field, v: &[i64]) -> Subspace {
    Subspace::span_ints(f, &[v])
}

fn exact(set: &ConciseSet, want: &[Subspace]) -> bool {
    let mut want = want.to_vec();
    want.sort();
    set.families.is_empty() && set.subspaces == want
}

fn product_type() -> Outcome {
    let f = q();
    let m = expected_measure(&ActionModel::ProductType {
        factors: vec![BaseModel::Bernoulli, BaseModel::Bernoulli],
    })
    .map_err(|e| e.to_string())?;
    let axes = [line(&f, &[1, 0]), line(&f, &[0, 1])];
    let ne = nonergodic_concise(&m, DEFAULT_ENUMERATION_BOUND).map_err(|e| e.to_string())?;
    let nw = nonwm_concise(&m).map_err(|e| e.to_string())?;
    ensure(exact(&ne, &axes), || format!("N_E = {:?}", ne.subspaces))?;
    ensure(exact(&nw, &axes), || format!("N_W = {:?}", nw.subspaces))?;
    let diag = classify_direction(&m, &line(&f, &[1, 1])).map_err(|e| e.to_string())?;
    ensure(diag.ergodic && diag.weak_mixing && diag.strong_mixing, || {
        "diagonal is not ergodic + weak mixing + strong mixing".into()
    })?;
    Ok("N_E = N_W = {x-axis, y-axis}; diagonal E+WM+SM".into())
}

fn bergelson_ward() -> Outcome {
    let f = FieldSpec::new(&[2]).unwrap();
    let ms = bergelson_ward_vectors();
    let m = expected_measure(&ActionModel::BergelsonWard {
        base: BaseModel::Bernoulli,
        vectors: ms.clone(),
    })
    .and_then(|m| m.embed(&f))
    .map_err(|e| e.to_string())?;
    let walls: Vec<Subspace> = ms.iter().map(|v| line(&f, &[-v[1], v[0]])).collect();
    for w in &walls {
        let v = classify_direction(&m, w).map_err(|e| e.to_string())?;
        ensure(!v.ergodic && !v.weak_mixing, || format!("{w:?} should be non-ergodic"))?;
    }
    let ne = nonergodic_concise(&m, DEFAULT_ENUMERATION_BOUND).map_err(|e| e.to_string())?;
    let nw = nonwm_concise(&m).map_err(|e| e.to_string())?;
    ensure(exact(&ne, &walls), || format!("N_E = {:?}", ne.subspaces))?;
    ensure(exact(&nw, &walls), || format!("N_W = {:?}", nw.subspaces))?;
    let slope = FieldScalar::sqrt(&f, 2)
        .unwrap()
        .checked_sub(&FieldScalar::one(&f))
        .unwrap();
    let irr = Subspace::new(&f, 2, vec![vec![FieldScalar::one(&f), slope]]).unwrap();
    let v = classify_direction(&m, &irr).map_err(|e| e.to_string())?;
    ensure(v.weak_mixing, || "slope √2−1 is not weak mixing".into())?;
    Ok(format!("{} walls exact; slope √2−1 weak mixing", walls.len()))
}

fn random_concise(rng: &mut rand_chacha::ChaCha8Rng, f: &Field, d: usize) -> Vec<Subspace> {
    loop {
        let n = rng.gen_range(1..=3);
        let members: Vec<Subspace> = (0..n)
            .map(|_| {
                let e = rng.gen_range(1..d);
                common::subspace(rng, f, d, e, true)
            })
            .filter(|s| !s.is_full())
            .collect();
        let hull = concise_hull(members.clone());
        if !hull.is_empty() && hull.len() == members.len() {
            return hull;
        }
    }
}

fn realization() -> Outcome {
    let f = common::q2();
    let mut rng = common::rng(3);
    let mut runs = 0;
    for d in [2usize, 3] {
        for _ in 0..50 {
            let family = random_concise(&mut rng, &f, d);
            let r = realize(&family, DEFAULT_CLOSURE_CAP).map_err(|e| e.to_string())?;
            ensure(r.verified && r.target == family, || format!("failed on {family:?}"))?;
            runs += 1;
        }
    }
    // The 1-dim + 2-dim example in R^3, built directly and realized.
    let l1 = line(&f, &[1, 1, 1]);
    let l2 = Subspace::span_ints(&f, &[&[1, 0, 0], &[0, 1, 0]]);
    let target = [l1.clone(), l2.clone()];
    let zero = zero_vector(&f, 3);
    let wall = |l: &Subspace| Raw::boxed(l.orthocomplement().basis().to_vec(), zero.clone());
    let mut both = l1.orthocomplement().basis().to_vec();
    both.extend(l2.orthocomplement().basis().iter().cloned());
    let m = SymbolicMeasure::new(
        Space::Euclid(3),
        &f,
        false,
        vec![wall(&l1), wall(&l2), Raw::boxed(both, zero.clone())],
    )
    .map_err(|e| e.to_string())?;
    let ne = nonergodic_concise(&m, DEFAULT_ENUMERATION_BOUND).map_err(|e| e.to_string())?;
    let nw = nonwm_concise(&m).map_err(|e| e.to_string())?;
    ensure(exact(&ne, &target) && exact(&nw, &target), || "example family mismatch".into())?;
    let r = realize(&target, DEFAULT_CLOSURE_CAP).map_err(|e| e.to_string())?;
    ensure(r.verified && r.torus_verified, || "example realization not verified".into())?;
    Ok(format!("{runs} random families verified; line + plane in R^3 exact"))
}

fn pushforward_identity() -> Outcome {
    let f = common::q2();
    let mut rng = common::rng(4);
    let cfg = FtConfig::default();
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let d = rng.gen_range(1..=3);
        let m = common::measure(&mut rng, &f, Space::Euclid(d), common::NO_GROUPS);
        let image = m.pushforward_quotient().map_err(|e| e.to_string())?;
        let euclid = Transform::new(&m, &cfg).map_err(|e| e.to_string())?;
        let torus = Transform::new(&image, &cfg).map_err(|e| e.to_string())?;
        for _ in 0..100 {
            let h: Vec<i64> = (0..d).map(|_| rng.gen_range(-20..=20)).collect();
            let t: Vec<f64> = h.iter().map(|&x| x as f64).collect();
            worst = worst.max((euclid.eval(&t) - torus.eval_lattice(&h)).norm());
        }
    }
    ensure(worst < PUSHFORWARD_TOL, || format!("max deviation {worst:e}"))?;
    Ok(format!("2000 points, max deviation {worst:.2e}"))
}

fn suspension() -> Outcome {
    let f = common::q2();
    let mut rng = common::rng(5);
    let mut compared = 0;
    for _ in 0..50 {
        let d = rng.gen_range(1..=3);
        let m = common::measure(&mut rng, &f, Space::Torus(d), common::ALL);
        let s = m.suspend().map_err(|e| e.to_string())?;
        for _ in 0..20 {
            let l = common::direction(&mut rng, &f, d);
            let a = classify_direction(&m, &l).map_err(|e| e.to_string())?;
            let b = classify_direction(&s, &l).map_err(|e| e.to_string())?;
            ensure(
                (a.ergodic, a.weak_mixing, a.strong_mixing) == (b.ergodic, b.weak_mixing, b.strong_mixing),
                || format!("{m:?} along {l:?}: torus {a:?} vs periodized {b:?}"),
            )?;
            compared += 1;
        }
    }
    Ok(format!("{compared} verdicts agree"))
}

struct WienerCase {
    name: &'static str,
    measure: SymbolicMeasure,
    direction: Subspace,
    ell: Vec<FieldScalar>,
}

fn wiener_fixtures() -> Vec<WienerCase> {
    let f = q();
    let e = |raws: Vec<Raw>| SymbolicMeasure::new(Space::Euclid(2), &f, false, raws).unwrap();
    let seg = |v: &[i64], anchor: Vec<FieldScalar>| Raw::boxed(vec![int_vector(&f, v)], anchor);
    let atom = e(vec![Raw::atom(rational_vector(&f, &[(1, 3), (1, 4)]))]);
    let cross = e(vec![seg(&[1, 0], zero_vector(&f, 2)), seg(&[0, 1], zero_vector(&f, 2))]);
    let shifted = e(vec![seg(&[1, 0], rational_vector(&f, &[(0, 1), (1, 3)]))]);
    let square = e(vec![Raw::boxed(
        vec![int_vector(&f, &[1, 0]), int_vector(&f, &[0, 1])],
        zero_vector(&f, 2),
    )]);
    let product = expected_measure(&ActionModel::ProductType {
        factors: vec![BaseModel::Bernoulli, BaseModel::Bernoulli],
    })
    .unwrap();
    let x = line(&f, &[1, 0]);
    let y = line(&f, &[0, 1]);
    let diag = line(&f, &[1, 1]);
    let zero = zero_vector(&f, 2);
    vec![
        WienerCase { name: "atom on its wall", measure: atom.clone(), direction: x.clone(), ell: rational_vector(&f, &[(1, 3), (0, 1)]) },
        WienerCase { name: "atom off the wall", measure: atom.clone(), direction: x.clone(), ell: zero.clone() },
        WienerCase { name: "atom, other axis", measure: atom, direction: y.clone(), ell: rational_vector(&f, &[(0, 1), (1, 4)]) },
        WienerCase { name: "cross along y", measure: cross.clone(), direction: y.clone(), ell: zero.clone() },
        WienerCase { name: "cross along diagonal", measure: cross, direction: diag.clone(), ell: zero.clone() },
        WienerCase { name: "shifted segment, its wall", measure: shifted.clone(), direction: y.clone(), ell: rational_vector(&f, &[(0, 1), (1, 3)]) },
        WienerCase { name: "shifted segment, origin", measure: shifted, direction: y.clone(), ell: zero.clone() },
        WienerCase { name: "unit square", measure: square, direction: x.clone(), ell: zero.clone() },
        WienerCase { name: "product type along x (periodized)", measure: product.clone(), direction: x, ell: zero.clone() },
        WienerCase { name: "product type along diagonal (periodized)", measure: product, direction: diag, ell: zero },
    ]
}

fn wiener() -> Outcome {
    let cfg = EstimatorConfig::default();
    let mut worst = 0.0f64;
    for c in wiener_fixtures() {
        let est = wiener_mass(&c.measure, &c.direction, &c.ell, &cfg).map_err(|e| e.to_string())?;
        let mass = representative_wall_mass(&c.measure, &c.direction, &c.ell, &cfg.ft)
            .map_err(|e| e.to_string())?;
        let err = (est.estimate - mass).abs();
        worst = worst.max(err);
        ensure(err <= WIENER_TOL, || format!("{}: estimate {} vs mass {mass}", c.name, est.estimate))?;
        if mass > 0.0 {
            ensure(est.estimate >= WALL_FRACTION * mass, || format!("{}: wall underestimated", c.name))?;
        } else {
            ensure(est.estimate <= WIENER_TOL, || format!("{}: non-wall {}", c.name, est.estimate))?;
        }
    }
    Ok(format!("10 fixtures, max |estimate − mass| = {worst:.4}"))
}

fn rajchman() -> Outcome {
    let f = q();
    let cfg = EstimatorConfig::default();
    let mut constancy = 0.0f64;
    let mut plateau = f64::INFINITY;
    let carriers: Vec<(usize, Vec<Vec<i64>>)> = vec![
        (2, vec![vec![1, 0]]),
        (2, vec![vec![0, 1]]),
        (2, vec![vec![1, 2]]),
        (3, vec![vec![1, 0, 0], vec![0, 1, 1]]),
        (3, vec![vec![1, 1, 1]]),
    ];
    for (d, segs) in carriers {
        let raws = vec![Raw::boxed(segs.iter().map(|v| int_vector(&f, v)).collect(), zero_vector(&f, d))];
        let m = SymbolicMeasure::new(Space::Euclid(d), &f, false, raws).map_err(|e| e.to_string())?;
        let r = coset_constancy_check(&m, CONSTANCY_TOL, 200, 7).map_err(|e| e.to_string())?;
        constancy = constancy.max(r.max_deviation);
        ensure(r.passed, || format!("coset variation {:e}", r.max_deviation))?;
        let k = Subspace::new(&f, d, segs.iter().map(|v| int_vector(&f, v)).collect()).unwrap();
        let rows = rajchman_probe(&m, &k.orthocomplement(), &[1.0, 10.0, 100.0, 1000.0], &cfg)
            .map_err(|e| e.to_string())?;
        for row in &rows {
            plateau = plateau.min(row.sup);
            ensure((row.sup - 1.0).abs() < CONSTANCY_TOL, || format!("decay along K^⊥: {}", row.sup))?;
        }
    }
    let mut decayed = 0.0f64;
    for d in [2usize, 3] {
        let raws = vec![Raw::boxed((0..d).map(|i| unit_vector(&f, d, i)).collect(), zero_vector(&f, d))];
        let m = SymbolicMeasure::new(Space::Euclid(d), &f, false, raws).map_err(|e| e.to_string())?;
        let rows = rajchman_probe(&m, &Subspace::full(&f, d), &[DECAY_RADIUS], &cfg)
            .map_err(|e| e.to_string())?;
        decayed = decayed.max(rows[0].sup);
        ensure(rows[0].sup < DECAY_LEVEL, || format!("full box sup {} at r = 1000", rows[0].sup))?;
    }
    Ok(format!(
        "coset variation ≤ {constancy:.1e}, |σ̂| along K^⊥ ≥ {plateau:.12}, full boxes ≤ {decayed:.1e} at r = {DECAY_RADIUS}"
    ))
}

fn decomposition() -> Outcome {
    let f = common::q2();
    let mut rng = common::rng(8);
    for _ in 0..200 {
        let d = rng.gen_range(1..=3);
        let space = if rng.gen_bool(0.5) { Space::Euclid(d) } else { Space::Torus(d) };
        let m = common::measure(&mut rng, &f, space, common::ALL);
        let parts = m.decompose();
        ensure(parts.len() == d + 1, || "wrong number of parts".into())?;
        let mut kinds = Vec::new();
        for (e, p) in parts.iter().enumerate() {
            ensure(p.components().iter().all(|c| c.dimension() == e), || format!("part {e} not sorted"))?;
            let again = p.decompose();
            ensure(
                again.iter().enumerate().all(|(k, q)| if k == e { q == p } else { q.is_zero() }),
                || format!("part {e} not idempotent"),
            )?;
            kinds.extend(p.components().iter().map(|c| c.kind().clone()));
        }
        let n = kinds.len();
        kinds.sort();
        kinds.dedup();
        ensure(kinds.len() == n, || "repeated carrier".into())?;
        let back = SymbolicMeasure::sum_all(&parts).map_err(|e| e.to_string())?;
        ensure(back == m, || format!("re-sum differs for {m:?}"))?;
    }
    Ok("200 random measures".into())
}

fn chair() -> Outcome {
    let f = FieldSpec::new(&[5]).unwrap();
    let m = SymbolicMeasure::new(
        Space::Torus(2),
        &f,
        false,
        vec![Raw::group(
            vec![unit_vector(&f, 2, 0), unit_vector(&f, 2, 1)],
            Ring::Q,
            zero_vector(&f, 2),
        )],
    )
    .map_err(|e| e.to_string())?;
    let nw = nonwm_concise(&m).map_err(|e| e.to_string())?;
    ensure(nw.subspaces == vec![Subspace::full(&f, 2)], || "weak mixing directions exist".into())?;
    let rational = classify_direction(&m, &line(&f, &[1, 2])).map_err(|e| e.to_string())?;
    ensure(!rational.ergodic, || "span{(1,2)} should be non-ergodic".into())?;
    let half = FieldScalar::from_ratio(&f, 1, 2);
    let phi = FieldScalar::sqrt(&f, 5)
        .unwrap()
        .scale(&half.to_rational().unwrap())
        .checked_add(&half)
        .unwrap();
    let golden = Subspace::new(&f, 2, vec![vec![FieldScalar::one(&f), phi]]).unwrap();
    let v = classify_direction(&m, &golden).map_err(|e| e.to_string())?;
    ensure(v.ergodic && !v.weak_mixing, || "golden slope should be ergodic, not weak mixing".into())?;
    Ok("N_W = {R^2}; span{(1,2)} non-ergodic; golden slope ergodic".into())
}

fn oracle() -> Outcome {
    let mut worst = 0.0f64;
    let mut min_eig = f64::INFINITY;
    let models = bundled_models();
    for (name, m) in &models {
        let r = crosscheck(m, CROSSCHECK_BOUND, CROSSCHECK_TOL, Execution::Parallel).map_err(|e| e.to_string())?;
        worst = worst.max(r.max_error);
        ensure(r.passed(), || format!("{name}: {} mismatches", r.failure_count))?;
        for g in gram_check(m, 2).map_err(|e| e.to_string())? {
            min_eig = min_eig.min(g.min_eigenvalue);
            ensure(g.min_eigenvalue >= -GRAM_TOL, || format!("{name} {}: {}", g.observable, g.min_eigenvalue))?;
        }
    }
    Ok(format!(
        "{} models, max error {worst:.1e}, min Gram eigenvalue {min_eig:.1e}",
        models.len()
    ))
}

fn lint_fixture(name: &str) -> SymbolicMeasure {
    let f = q();
    let t = |d: usize, raws: Vec<Raw>| SymbolicMeasure::new(Space::Torus(d), &f, false, raws).unwrap();
    match name {
        "lonely_atom" => t(1, vec![Raw::atom(rational_vector(&f, &[(1, 3)]))]),
        "untranslated_wall" => t(
            2,
            vec![
                Raw::atom(rational_vector(&f, &[(1, 2), (0, 1)])),
                Raw::boxed(vec![int_vector(&f, &[0, 1])], zero_vector(&f, 2)),
            ],
        ),
        "ergodic_not_wm" => t(
            2,
            vec![Raw::boxed(vec![int_vector(&f, &[1, 0])], rational_vector(&f, &[(0, 1), (1, 3)]))],
        ),
        _ => unreachable!(),
    }
}

fn lint() -> Outcome {
    for (name, code) in [("lonely_atom", 'a'), ("untranslated_wall", 'b'), ("ergodic_not_wm", 'c')] {
        let w = admissibility_lint(&lint_fixture(name)).map_err(|e| e.to_string())?;
        let codes: Vec<char> = w.iter().map(|w| w.code).collect();
        ensure(!codes.is_empty() && codes.iter().all(|&c| c == code), || format!("{name}: {codes:?}"))?;
    }
    let f = q();
    let l = [line(&f, &[1, 0]), line(&f, &[0, 1])];
    let realized = realize(&l, DEFAULT_CLOSURE_CAP).map_err(|e| e.to_string())?.measure;
    let mut clean = vec![("realized axes", realized)];
    for (name, m) in bundled_models() {
        clean.push((name, expected_measure(&m).map_err(|e| e.to_string())?));
    }
    for (name, m) in &clean {
        let w = admissibility_lint(m).map_err(|e| e.to_string())?;
        ensure(w.is_empty(), || format!("{name} fired {:?}", w.iter().map(|w| w.code).collect::<Vec<_>>()))?;
    }
    Ok(format!("3 flagged fixtures exact, {} clean fixtures silent", clean.len()))
}

fn subspace_strategy(d: usize) -> impl Strategy<Value = Subspace> {
    prop::collection::vec(prop::collection::vec((-3i64..=3, -1i64..=1), d), 1..=d).prop_map(move |rows| {
        let f = common::q2();
        let r2 = FieldScalar::sqrt(&f, 2).unwrap();
        let vs = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&(a, b)| {
                        FieldScalar::from_int(&f, a)
                            .checked_add(&r2.checked_mul(&FieldScalar::from_int(&f, b)).unwrap())
                            .unwrap()
                    })
                    .collect()
            })
            .collect();
        Subspace::new(&f, d, vs).unwrap()
    })
}

fn run_property<S: Strategy>(
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases: PROPERTY_CASES,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

fn measure_strategy() -> impl Strategy<Value = (SymbolicMeasure, Subspace, Subspace)> {
    (1usize..=3, any::<u64>(), any::<bool>()).prop_map(|(d, seed, torus)| {
        let f = common::q2();
        let mut rng = common::rng(seed);
        let space = if torus { Space::Torus(d) } else { Space::Euclid(d) };
        let m = common::measure(&mut rng, &f, space, common::ALL);
        let l = common::direction(&mut rng, &f, d);
        let extra = common::direction(&mut rng, &f, d);
        let bigger = l.sum(&extra).unwrap();
        (m, l, bigger)
    })
}

fn structural() -> Outcome {
    for d in 1..=3 {
        run_property(subspace_strategy(d), |l| {
            let perp = l.orthocomplement();
            prop_assert_eq!(perp.dim() + l.dim(), l.ambient());
            prop_assert_eq!(perp.orthocomplement(), l);
            Ok(())
        })
        .map_err(|e| format!("involution: {e}"))?;
    }
    run_property(measure_strategy(), |(m, l, bigger)| {
        let a = classify_direction(&m, &l).unwrap();
        let b = classify_direction(&m, &bigger).unwrap();
        prop_assert!(!a.ergodic || b.ergodic);
        prop_assert!(!a.weak_mixing || b.weak_mixing);
        Ok(())
    })
    .map_err(|e| format!("monotonicity: {e}"))?;
    run_property(measure_strategy(), |(m, l, _)| {
        let v = classify_direction(&m, &l).unwrap();
        let ne = nonergodic_concise(&m, DEFAULT_ENUMERATION_BOUND).unwrap();
        let nw = nonwm_concise(&m).unwrap();
        prop_assert_eq!(ne.subordinates(&l), !v.ergodic);
        prop_assert_eq!(nw.subordinates(&l), !v.weak_mixing);
        Ok(())
    })
    .map_err(|e| format!("subordination: {e}"))?;
    Ok(format!("{PROPERTY_CASES} cases each: involution (d = 1, 2, 3), monotonicity, subordination"))
}

fn main() -> ExitCode {
    // Silence the default hook; panics are reported as FAIL lines.
    std::panic::set_hook(Box::new(|_| {}));
    let criteria: [Criterion; 12] = [
        ("product-type fixture", product_type),
        ("Bergelson–Ward fixture", bergelson_ward),
        ("realization round trip", realization),
        ("push-forward identity", pushforward_identity),
        ("suspension consistency", suspension),
        ("Wiener estimator vs wall test", wiener),
        ("Rajchman / wall dichotomy", rajchman),
        ("decomposition", decomposition),
        ("discrete-spectrum fixture", chair),
        ("oracle closure", oracle),
        ("lint suite", lint),
        ("structural properties", structural),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let label = format!("criterion {:>2} {name}", i + 1);
        if !filter.is_empty() && !filter.iter().any(|f| label.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("{label}: PASS ({detail}) [{secs:.1}s]"),
            Err(why) => {
                failed += 1;
                println!("{label}: FAIL ({why}) [{secs:.1}s]");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion(s) failed");
        ExitCode::FAILURE
    }
}
