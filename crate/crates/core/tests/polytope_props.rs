//! Symmetries and convexity properties of the generated inequality
//! systems, checked on random exact-rational tuples.

mod common;

use std::collections::HashMap;

use itertools::Itertools;
use qsc_core::alcove::{rat, rat_int, Rat};
use qsc_core::lp;
use qsc_core::polytope::{
    check_membership, generate_additive, generate_multiplicative, EigenTuple, SystemKind,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random exact alcove point: integers in [−12, 12] sorted descending,
/// recentred to sum zero, divided by 25 (so the spread stays ≤ 1).
fn random_alcove_coords(rng: &mut impl Rng, n: u32) -> Vec<Rat> {
    loop {
        let mut v: Vec<i64> = (0..n).map(|_| rng.gen_range(-12..=12)).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        let sum: i64 = v.iter().sum();
        let coords: Vec<Rat> = v.iter().map(|&x| rat(x * n as i64 - sum, 25 * n as i64)).collect();
        if coords[0].clone() - coords[n as usize - 1].clone() <= rat_int(1) {
            return coords;
        }
    }
}

fn random_tuple(rng: &mut impl Rng, n: u32, l: u32) -> EigenTuple {
    let points = (0..l).map(|_| random_alcove_coords(rng, n)).collect();
    EigenTuple::new(SystemKind::Multiplicative, points).unwrap()
}

#[test]
fn system_is_closed_under_marked_point_permutations() {
    for (n, l) in [(3u32, 3u32), (4, 3), (2, 4)] {
        let sys = generate_multiplicative(n, l, None).unwrap();
        let table: HashMap<_, u64> = sys
            .inequalities
            .iter()
            .map(|q| ((q.r(), q.subsets().to_vec(), q.d()), q.gw()))
            .collect();
        for q in &sys.inequalities {
            for perm in (0..l as usize).permutations(l as usize) {
                let permuted: Vec<_> = perm.iter().map(|&k| q.subsets()[k].clone()).collect();
                let gw = table.get(&(q.r(), permuted, q.d())).unwrap_or_else(|| {
                    panic!("permutation of {:?} escaped the system", q.subsets())
                });
                assert_eq!(*gw, q.gw(), "permuted record changed its witness");
            }
        }
    }
}

#[test]
fn membership_respects_the_involution() {
    let mut rng = ChaCha8Rng::seed_from_u64(613);
    for (n, l) in [(2u32, 3u32), (3, 3)] {
        let sys = generate_multiplicative(n, l, None).unwrap();
        for _ in 0..60 {
            let tuple = random_tuple(&mut rng, n, l);
            let a = check_membership(&sys, &tuple).unwrap();
            let b = check_membership(&sys, &tuple.involution()).unwrap();
            assert_eq!(a.member, b.member, "involution flipped membership");
            assert_eq!(a.violations.len(), b.violations.len());
        }
    }
}

#[test]
fn membership_is_monotone_under_scaling_toward_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(1999);
    for (n, l) in [(2u32, 3u32), (3, 3)] {
        let sys = generate_multiplicative(n, l, None).unwrap();
        let mut members = 0;
        for _ in 0..80 {
            let tuple = random_tuple(&mut rng, n, l);
            if !check_membership(&sys, &tuple).unwrap().member {
                continue;
            }
            members += 1;
            for s in [rat(1, 2), rat(1, 3), rat(1, 7)] {
                let shrunk = tuple.scale(&s).unwrap();
                assert!(
                    check_membership(&sys, &shrunk).unwrap().member,
                    "member left the polytope under scaling by {}",
                    s
                );
            }
        }
        assert!(members > 0, "sampler never produced a member");
    }
}

#[test]
fn near_zero_multiplicative_membership_is_additive_membership() {
    // Inside the ball where every |ξ| < 1/(2ln), all d ≥ 1 inequalities
    // hold automatically, so Δ_q(l) looks exactly like the cone Δ(l).
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for (n, l) in [(2u32, 3u32), (3, 3)] {
        let mult = generate_multiplicative(n, l, None).unwrap();
        let add = generate_additive(n, l, None).unwrap();
        let shrink = rat(1, 2 * (l as i64) * (n as i64));
        let mut disagreements_possible = 0;
        for _ in 0..80 {
            let tuple = random_tuple(&mut rng, n, l).scale(&shrink).unwrap();
            let as_additive = tuple.with_kind(SystemKind::Additive).unwrap();
            let m = check_membership(&mult, &tuple).unwrap().member;
            let a = check_membership(&add, &as_additive).unwrap().member;
            assert_eq!(m, a, "cone identification failed near the origin");
            if !m {
                disagreements_possible += 1;
            }
        }
        // The comparison is vacuous if everything sampled were a member.
        assert!(disagreements_possible > 0, "no non-members sampled");
    }
}

#[test]
fn redundancy_filter_never_changes_membership() {
    let mut rng = ChaCha8Rng::seed_from_u64(31173);
    for (n, l) in [(2u32, 3u32), (3, 3)] {
        let sys = generate_multiplicative(n, l, None).unwrap();
        let filtered = lp::filter_redundant(&sys);
        assert!(lp::systems_equivalent(&sys, &filtered).unwrap());
        for _ in 0..40 {
            let tuple = random_tuple(&mut rng, n, l);
            assert_eq!(
                check_membership(&sys, &tuple).unwrap().member,
                check_membership(&filtered, &tuple).unwrap().member,
                "filtering changed a membership verdict"
            );
        }
    }
}

#[test]
fn closure_report_finds_no_escapes() {
    for (n, l) in [(2u32, 3u32), (3, 3), (2, 4)] {
        let sys = generate_multiplicative(n, l, None).unwrap();
        let report = qsc_core::polytope::symmetry_closure_check(&sys).unwrap();
        assert!(report.escapes.is_empty(), "center orbits escaped for n={}, l={}", n, l);
        let expected = (n as u64).pow(l - 1) * sys.inequalities.len() as u64;
        assert_eq!(report.transports_checked, expected);
    }
}
