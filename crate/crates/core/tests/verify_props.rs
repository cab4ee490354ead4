//! Floating-point layer properties: eigenphase extraction round trips,
//! determinism of seeded sweeps across thread counts, and the agreement
//! of the exact membership verdict with the realizer's verdict.

mod common;

use qsc_core::alcove::{rat, AlcovePoint};
use qsc_core::polytope::{check_membership, generate_multiplicative, EigenTuple, SystemKind};
use qsc_core::verify::{
    eigen_alcove, haar_special_unitary, rationalize_alcove, realize, sample_conjugacy_class,
    verify_products, RealizeOptions,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn class_round_trip_on_random_rational_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(271828);
    for n in [2u32, 3, 4] {
        for _ in 0..8 {
            // Random rational alcove point with denominator 24.
            let mut v: Vec<i64> = (0..n).map(|_| rng.gen_range(-11..=11)).collect();
            v.sort_unstable_by(|a, b| b.cmp(a));
            let sum: i64 = v.iter().sum();
            let coords: Vec<_> =
                v.iter().map(|&x| rat(x * n as i64 - sum, 24 * n as i64)).collect();
            let xi = AlcovePoint::new(coords).unwrap();
            let a = sample_conjugacy_class(&xi, &mut rng);
            let back = eigen_alcove(&a).unwrap();
            for (exact, approx) in xi.to_f64().iter().zip(&back) {
                assert!((exact - approx).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn alcove_invariants_hold_and_survive_conjugation() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for n in [2u32, 3, 4, 5] {
        for _ in 0..6 {
            let a = haar_special_unitary(n, &mut rng);
            let coords = eigen_alcove(&a).unwrap();
            assert!(coords.windows(2).all(|w| w[0] >= w[1] - 1e-12));
            assert!(coords.iter().sum::<f64>().abs() < 1e-9);
            assert!(coords[0] - coords[n as usize - 1] <= 1.0 + 1e-12);
            let q = qsc_core::verify::haar_unitary(n, &mut rng);
            let conj = qsc_core::verify::UnitaryMatrix::new(
                q.matrix() * a.matrix() * q.matrix().adjoint(),
            )
            .unwrap();
            let coords2 = eigen_alcove(&conj).unwrap();
            for (x, y) in coords.iter().zip(&coords2) {
                assert!((x - y).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn sweeps_are_identical_across_worker_counts() {
    let sys = generate_multiplicative(3, 3, None).unwrap();
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| verify_products(&sys, 64, 2718, 1e-9).unwrap())
    };
    let one = run(1);
    let four = run(4);
    assert_eq!(one.trials, four.trials);
    assert_eq!(one.max_violation, four.max_violation);
    assert_eq!(one.violations.len(), four.violations.len());
}

#[test]
fn realizer_verdict_matches_exact_membership() {
    // Sample genuine product tuples, rationalize them, and compare the
    // exact polytope verdict with what the optimizer can realize.
    let sys = generate_multiplicative(2, 3, None).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut checked = 0;
    for _ in 0..12 {
        let a = haar_special_unitary(2, &mut rng);
        let b = haar_special_unitary(2, &mut rng);
        let c = qsc_core::verify::UnitaryMatrix::new((a.matrix() * b.matrix()).adjoint()).unwrap();
        let points: Vec<AlcovePoint> = [&a, &b, &c]
            .iter()
            .map(|m| rationalize_alcove(&eigen_alcove(m).unwrap(), 1000).unwrap())
            .collect::<Vec<_>>();
        let tuple = EigenTuple::multiplicative(points).unwrap();
        let report = check_membership(&sys, &tuple).unwrap();
        // Rationalization can nudge a boundary point either way; only
        // clearly interior points are owed a realization.
        let interior =
            report.member && sys.inequalities.iter().all(|q| q.excess_f64(&tuple.to_f64()) < -1e-2);
        if interior {
            checked += 1;
            let out = realize(&tuple, &RealizeOptions::default()).unwrap();
            assert!(
                out.is_realized(),
                "interior tuple failed to realize (residual {})",
                out.residual()
            );
        }
    }
    assert!(checked > 0, "no interior samples drawn");
}

#[test]
fn non_member_resists_realization() {
    let tuple = EigenTuple::new(
        SystemKind::Multiplicative,
        vec![vec![rat(1, 2), rat(-1, 2)], vec![rat(1, 2), rat(-1, 2)], vec![rat(1, 2), rat(-1, 2)]],
    )
    .unwrap();
    let sys = generate_multiplicative(2, 3, None).unwrap();
    assert!(!check_membership(&sys, &tuple).unwrap().member);
    let opts = RealizeOptions { restarts: 3, max_iter: 500, ..RealizeOptions::default() };
    let out = realize(&tuple, &opts).unwrap();
    assert!(!out.is_realized());
    assert!(out.residual() > 1e-3);
}
