use fairagg::model::{Act, Individual, Problem};
use fairagg::rules::*;
use fairagg::verdict::Status;
use fairagg::welfare::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_simplex_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    // exponential spacings give a uniform point on the simplex
    let e: Vec<f64> = (0..n).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let s: f64 = e.iter().sum();
    e.iter().map(|x| x / s).collect()
}

fn random_weight_set(rng: &mut ChaCha8Rng, n: usize) -> WeightSet {
    let k = rng.gen_range(1..=4);
    WeightSet::new((0..k).map(|_| WeightVector::new(random_simplex_point(rng, n)).unwrap()).collect()).unwrap()
}

fn random_problem(rng: &mut ChaCha8Rng, n: usize) -> Problem {
    let individuals = (0..n)
        .map(|_| Individual::new((0..3).map(|_| rng.gen()).collect(), random_simplex_point(rng, 3)))
        .collect();
    Problem::from_labels(&["x", "y", "z"], &["a", "b", "c"], individuals).unwrap()
}

/// Oracle: brute minimum of μ·u over the listed vertices.
fn min_over_vertices(rows: &[Vec<f64>], u: &[f64]) -> f64 {
    rows.iter().map(|m| m.iter().zip(u).map(|(a, b)| a * b).sum::<f64>()).fold(f64::INFINITY, f64::min)
}

#[test]
fn psi_of_relative_fair_is_vertex_minimum() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in [2, 3, 4] {
        let m = random_weight_set(&mut rng, n);
        let rows: Vec<Vec<f64>> = m.vertices().iter().map(|w| w.as_slice().to_vec()).collect();
        let rule = relative_fair_rule(m);
        for _ in 0..2500 {
            let u: Vec<f64> = (0..n).map(|_| rng.gen()).collect();
            let got = psi_of_rule(&rule, &u).unwrap();
            assert!((got - min_over_vertices(&rows, &u)).abs() <= 1e-9);
        }
    }
}

#[test]
fn property_examples() {
    let maximin = WelfareFunction::from_rule(&relative_maximin_rule(), 2).unwrap();
    for v in property_profile(&maximin, 2000, 3) {
        assert_eq!(v.status, Status::NoViolationFound, "{:?}", v.property);
    }
    let two = WeightSet::from_rows(&[&[0.3, 0.7], &[0.7, 0.3]]).unwrap();
    let mw = WelfareFunction::from_rule(&max_weight_rule(two), 2).unwrap();
    assert_eq!(check_monotone(&mw, 2000, 3).status, Status::NoViolationFound);
    let qc = check_quasiconcave(&mw, 2000, 3);
    assert_eq!(
        qc.witness,
        Some(PropertyWitness::Quasiconcave { u: vec![1.0, 0.0], v: vec![0.0, 1.0], t: 0.5 })
    );
    let nash = WelfareFunction::from_rule(&nash_rule(), 2).unwrap();
    assert_eq!(check_homogeneous(&nash, 2000, 3).status, Status::Violated);
    let ti = check_translation_invariant(&nash, 2000, 3);
    assert_eq!(ti.witness, Some(PropertyWitness::TranslationInvariant { u: vec![0.5, 0.5], c: 0.2 }));
    // (0.5 + 0.2)^2 = 0.49 against 0.25 + 0.2
    assert!((nash.eval(&[0.7, 0.7]) - 0.49).abs() < 1e-12);
    let skew = WelfareFunction::from_rule(&relative_utilitarian_rule(WeightVector::new(vec![0.9, 0.1]).unwrap()), 2).unwrap();
    let sym = check_symmetric(&skew, 2000, 3);
    assert_eq!(sym.witness, Some(PropertyWitness::Symmetric { u: vec![1.0, 0.0], permutation: vec![1, 0] }));
    let equal = WelfareFunction::from_rule(&relative_utilitarian_rule(WeightVector::equal(3)), 3).unwrap();
    for v in property_profile(&equal, 2000, 3) {
        assert_eq!(v.status, Status::NoViolationFound, "{:?}", v.property);
    }
}

#[test]
fn violations_carry_rechecking_witnesses() {
    let nash = WelfareFunction::from_rule(&nash_rule(), 3).unwrap();
    for v in property_profile(&nash, 500, 9) {
        if v.status == Status::Violated {
            assert!(v.witness.as_ref().unwrap().violates(&nash));
        } else {
            assert!(v.witness.is_none());
        }
    }
}

#[test]
fn checks_are_deterministic() {
    let psi = WelfareFunction::from_fn(3, "odd", |u| u[0] * u[0] + u[1] + u[2].sqrt());
    let a = property_profile(&psi, 3000, 42);
    let b = property_profile(&psi, 3000, 42);
    assert_eq!(a, b);
}

#[test]
fn recovery_examples_two_person() {
    let util = WelfareFunction::from_rule(&relative_utilitarian_rule(WeightVector::equal(2)), 2).unwrap();
    let r = recover_weight_set(&util, &RecoveryConfig::default()).unwrap();
    let point = WeightSet::singleton(WeightVector::equal(2));
    assert!(hausdorff_distance(&point, &r).unwrap() <= 0.01);

    let m = WeightSet::from_rows(&[&[0.3, 0.7], &[0.7, 0.3]]).unwrap();
    let psi = WelfareFunction::from_rule(&relative_fair_rule(m.clone()), 2).unwrap();
    let r = recover_weight_set(&psi, &RecoveryConfig::default()).unwrap();
    assert!(hausdorff_distance(&m, &r).unwrap() <= 0.01);
    assert!(r.max_violation() <= 1e-9);

    let maximin = WelfareFunction::from_rule(&relative_maximin_rule(), 2).unwrap();
    let r = recover_weight_set(&maximin, &RecoveryConfig::default()).unwrap();
    assert!(hausdorff_distance(&WeightSet::simplex(2), &r).unwrap() <= 1e-12);
}

#[test]
fn recovery_without_refinement_is_an_outer_approximation() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let m = random_weight_set(&mut rng, 3);
    let rows: Vec<Vec<f64>> = m.vertices().iter().map(|w| w.as_slice().to_vec()).collect();
    let psi = WelfareFunction::from_rule(&relative_fair_rule(m), 3).unwrap();
    let cfg = RecoveryConfig { refine: false, ..Default::default() };
    let r = recover_weight_set(&psi, &cfg).unwrap();
    // every true vertex satisfies every cut
    for mu in &rows {
        for h in &r.halfspaces {
            assert!(h.slack(mu) >= -1e-9);
        }
    }
}

#[test]
fn round_trip_random_polytopes() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for n in [2, 3] {
        for _ in 0..6 {
            let m = random_weight_set(&mut rng, n);
            let original = relative_fair_rule(m.clone());
            let psi = WelfareFunction::from_rule(&original, n).unwrap();
            let r = recover_weight_set(&psi, &RecoveryConfig::default()).unwrap();
            assert!(r.max_violation() <= 1e-9, "n = {n}: {} over {:?}, m = {:?}", r.max_violation(), r.vertices, m);
            let rebuilt = relative_fair_rule(r.weight_set().unwrap());
            let mut worst = 0.0f64;
            for _ in 0..1000 {
                let p = random_problem(&mut rng, n);
                let act = Act((0..3).map(|_| rng.gen_range(0..3)).collect());
                let a = evaluate(&original, &p, &act).unwrap();
                let b = evaluate(&rebuilt, &p, &act).unwrap();
                worst = worst.max((a - b).abs());
            }
            assert!(worst <= 1e-6, "n = {n}: worst score gap {worst}, cuts {}, m = {:?}, got {:?}", r.grid.refinement_cuts, m, r.vertices);
        }
    }
}
