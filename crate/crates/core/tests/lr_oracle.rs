//! Cross-checks the skew-tableau Littlewood–Richardson engine against a
//! Schur-polynomial oracle that works by monomial arithmetic.

mod common;

use num_bigint::BigInt;
use qsc_core::lr::{expand_product, lr_coefficient};
use qsc_core::partition::partitions_in_box;
use qsc_core::Partition;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn p(parts: &[u32]) -> Partition {
    Partition::new(parts.iter().copied()).unwrap()
}

#[test]
fn oracle_agrees_on_all_small_pairs() {
    // Every pair of partitions in a 3×3 box, expanded in 3 variables.
    let shapes = partitions_in_box(3, 3);
    for lam in &shapes {
        for mu in &shapes {
            let ours: Vec<(Partition, BigInt)> =
                expand_product(lam, mu, 3, None, None).as_ref().clone();
            let oracle = common::schur_product_oracle(lam, mu, 3);
            assert_eq!(ours, oracle, "disagreement at {} × {}", lam, mu);
        }
    }
}

#[test]
fn oracle_agrees_on_random_wider_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..40 {
        let lam = common::random_partition(&mut rng, 4, 4);
        let mu = common::random_partition(&mut rng, 4, 3);
        let ours: Vec<(Partition, BigInt)> =
            expand_product(&lam, &mu, 4, None, None).as_ref().clone();
        let oracle = common::schur_product_oracle(&lam, &mu, 4);
        assert_eq!(ours, oracle, "disagreement at {} × {}", lam, mu);
    }
}

#[test]
fn column_bound_is_a_filter() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..25 {
        let lam = common::random_partition(&mut rng, 3, 4);
        let mu = common::random_partition(&mut rng, 3, 4);
        let free = expand_product(&lam, &mu, 3, None, None);
        let boxed = expand_product(&lam, &mu, 3, Some(4), None);
        let filtered: Vec<_> = free.iter().filter(|(nu, _)| nu.part(0) <= 4).cloned().collect();
        assert_eq!(boxed.as_ref(), &filtered);
    }
}

#[test]
fn coefficients_are_symmetric_and_match_oracle_values() {
    // A classical multiplicity-2 coefficient and its neighbors.
    assert_eq!(lr_coefficient(&p(&[2, 1]), &p(&[2, 1]), &p(&[3, 2, 1])), BigInt::from(2));
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..60 {
        let lam = common::random_partition(&mut rng, 3, 3);
        let mu = common::random_partition(&mut rng, 3, 3);
        let nu = common::random_partition(&mut rng, 4, 6);
        assert_eq!(
            lr_coefficient(&lam, &mu, &nu),
            lr_coefficient(&mu, &lam, &nu),
            "symmetry broken at {} × {} → {}",
            lam,
            mu,
            nu
        );
    }
}
