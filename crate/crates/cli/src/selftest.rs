//! The built-in invariant suite behind `qsc selftest`.
//!
//! Every check recomputes a fact the library guarantees by construction
//! and compares it against an independently built expectation, so a
//! failure signals a broken internal invariant (exit 3), not bad user
//! input.  The suite doubles as a smoke test for a fresh build and as a
//! validator for the on-disk product cache.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use qsc_core::alcove;
use qsc_core::fusion::{fusion_product, verlinde_ur_basis_product, SuLevelWeight, UrWeight};
use qsc_core::lp;
use qsc_core::lr::classical_product;
use qsc_core::polytope::{
    generate_multiplicative, revalidate_witnesses, symmetry_closure_check, EigenTuple, Inequality,
    InequalitySystem, SystemKind,
};
use qsc_core::quantum::{quantum_product, sigma_c, sigma_c_multiply, QuantumClass};
use qsc_core::schubert::{GrassCtx, SchubertIndex};
use qsc_core::verify::{realize, verify_products, RealizeOptions};
use qsc_core::{CohomologyClass, Partition};

use crate::{cache, CliError, Verdict};

/// A named check: `Err` carries the human-readable breach description.
type Check = (&'static str, Box<dyn Fn() -> Result<(), String>>);

pub fn run(json_mode: bool, no_cache: bool, trials: u64) -> Result<Verdict, CliError> {
    let checks: Vec<Check> = vec![
        ("su2-three-factor-facets", Box::new(su2_three_factor_facets)),
        ("witness-recompute", Box::new(witness_recompute)),
        ("center-orbit-closure", Box::new(center_orbit_closure)),
        ("center-power", Box::new(center_power)),
        ("degree-zero-slice", Box::new(degree_zero_slice)),
        ("fusion-su2-table", Box::new(fusion_su2_table)),
        ("verlinde-center-recursion", Box::new(verlinde_center_recursion)),
        ("lp-filter-equivalence", Box::new(lp_filter_equivalence)),
        ("sampling-necessity", Box::new(move || sampling_necessity(trials))),
        ("tuple-json-round-trip", Box::new(tuple_json_round_trip)),
        ("realizer-split", Box::new(realizer_split)),
        ("cache-bit-identity", Box::new(move || cache_bit_identity(no_cache))),
    ];
    let total = checks.len();
    let mut rows = Vec::with_capacity(total);
    let mut failures = 0usize;
    for (name, check) in checks {
        let result = check();
        match &result {
            Ok(()) => {
                if !json_mode {
                    println!("check {name}: ok");
                }
            }
            Err(msg) => {
                failures += 1;
                if !json_mode {
                    println!("check {name}: FAILED — {msg}");
                }
            }
        }
        rows.push((name, result));
    }
    if json_mode {
        let arr: Vec<serde_json::Value> = rows
            .iter()
            .map(|(name, r)| match r {
                Ok(()) => serde_json::json!({"check": name, "ok": true}),
                Err(msg) => serde_json::json!({"check": name, "ok": false, "detail": msg}),
            })
            .collect();
        println!("{}", serde_json::Value::Array(arr));
    } else if failures == 0 {
        println!("all {total} checks passed");
    }
    if failures > 0 {
        Err(CliError::Internal(format!("{failures} of {total} selftest checks failed")))
    } else {
        Ok(Verdict::Pass)
    }
}

fn ferr(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn cli_msg(e: CliError) -> String {
    match e {
        CliError::Input(m) | CliError::Internal(m) => m,
    }
}

fn binomial(n: u64, r: u64) -> u64 {
    let r = r.min(n - r);
    let mut acc = 1u64;
    for k in 0..r {
        acc = acc * (n - k) / (k + 1);
    }
    acc
}

/// All partitions fitting in a `rows` × `cols` box, i.e. the Schubert
/// basis of G(rows, rows+cols).
fn box_partitions(rows: u32, cols: u32) -> Vec<Vec<u32>> {
    fn rec(rows: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(prefix.clone());
        if rows == 0 {
            return;
        }
        for part in (1..=max).rev() {
            prefix.push(part);
            rec(rows - 1, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(rows, cols, &mut Vec::new(), &mut out);
    out
}

/// The n = 2, l = 3 system must be exactly the three pairwise triangle
/// bounds plus the total bound Σ tₖ ≤ 1 — the textbook description of
/// which SU(2) conjugacy classes multiply to the identity.
fn su2_three_factor_facets() -> Result<(), String> {
    let sys = generate_multiplicative(2, 3, None).map_err(ferr)?;
    if sys.inequalities.len() != 4 {
        return Err(format!("expected 4 records for n=2, l=3, found {}", sys.inequalities.len()));
    }
    let rec = |elems: [u32; 3], d: u32| -> Result<Inequality, String> {
        let subsets = elems
            .iter()
            .map(|&k| SchubertIndex::new(2, [k]))
            .collect::<Result<Vec<_>, _>>()
            .map_err(ferr)?;
        Inequality::new(2, 3, 1, subsets, d, 1).map_err(ferr)
    };
    let reference = InequalitySystem {
        kind: SystemKind::Multiplicative,
        n: 2,
        l: 3,
        inequalities: vec![
            rec([1, 1, 1], 1)?,
            rec([1, 2, 2], 0)?,
            rec([2, 1, 2], 0)?,
            rec([2, 2, 1], 0)?,
        ],
    };
    reference.validate().map_err(ferr)?;
    if sys.inequalities != reference.inequalities {
        return Err("generated records differ from the four reference facets".into());
    }
    if !lp::systems_equivalent(&sys, &reference).map_err(ferr)? {
        return Err("generated system is not equivalent to the reference facets".into());
    }
    Ok(())
}

/// Every stored witness number must agree with a fresh recomputation.
fn witness_recompute() -> Result<(), String> {
    let sys = generate_multiplicative(3, 3, None).map_err(ferr)?;
    revalidate_witnesses(&sys, None).map_err(ferr)
}

/// Transporting any record by any center element must land on a record
/// already in the system, with the same witness.
fn center_orbit_closure() -> Result<(), String> {
    let sys = generate_multiplicative(3, 3, None).map_err(ferr)?;
    let report = symmetry_closure_check(&sys).map_err(ferr)?;
    if !report.escapes.is_empty() {
        return Err(format!("{} record transports left the system", report.escapes.len()));
    }
    let expected = 9 * sys.inequalities.len() as u64;
    if report.transports_checked != expected {
        return Err(format!(
            "checked {} transports, expected {}",
            report.transports_checked, expected
        ));
    }
    Ok(())
}

/// The n-th quantum power of σ_c = σ_{(1,…,1)} must be exactly qʳ·1,
/// both by the full product and by the closed-form shortcut.
fn center_power() -> Result<(), String> {
    let ctx = GrassCtx::new(2, 4).map_err(ferr)?;
    let c = QuantumClass::basis(ctx, sigma_c(ctx), 0).map_err(ferr)?;
    let mut acc = QuantumClass::unit(ctx);
    for _ in 0..4 {
        acc = quantum_product(&acc, &c, None).map_err(ferr)?;
    }
    let mut expected = BTreeMap::new();
    expected.insert((Partition::empty(), 2u32), BigInt::from(1));
    if acc.terms() != &expected {
        return Err(format!("4th power of σ_c on G(2,4) is {:?}, expected q²", acc.terms()));
    }
    let shortcut = sigma_c_multiply(4, &QuantumClass::unit(ctx)).map_err(ferr)?;
    if shortcut.terms() != acc.terms() {
        return Err("closed-form center multiplication disagrees with the full product".into());
    }
    Ok(())
}

/// The q⁰ part of every quantum basis product must equal the cup
/// product, across the whole basis of G(1,3) and G(2,4).
fn degree_zero_slice() -> Result<(), String> {
    for (r, n) in [(1u32, 3u32), (2, 4)] {
        let ctx = GrassCtx::new(r, n).map_err(ferr)?;
        let shapes = box_partitions(r, n - r);
        if shapes.len() as u64 != binomial(n as u64, r as u64) {
            return Err(format!("basis sweep of G({r},{n}) is incomplete"));
        }
        for a in &shapes {
            for b in &shapes {
                let pa = Partition::new(a.clone()).map_err(ferr)?;
                let pb = Partition::new(b.clone()).map_err(ferr)?;
                let quantum = quantum_product(
                    &QuantumClass::basis(ctx, pa.clone(), 0).map_err(ferr)?,
                    &QuantumClass::basis(ctx, pb.clone(), 0).map_err(ferr)?,
                    None,
                )
                .map_err(ferr)?;
                let classical = classical_product(
                    &CohomologyClass::basis(ctx, pa).map_err(ferr)?,
                    &CohomologyClass::basis(ctx, pb).map_err(ferr)?,
                    None,
                )
                .map_err(ferr)?;
                if quantum.degree_zero_part().terms() != classical.terms() {
                    return Err(format!(
                        "q⁰ slice of σ_{a:?} ⋆ σ_{b:?} on G({r},{n}) differs from the cup product"
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Spot table for SU(2): spin-½ squared at level 2 splits into spin 0
/// and spin 1; at level 1 the spin-1 part is truncated; the level-2
/// vertex squares to the identity.
fn fusion_su2_table() -> Result<(), String> {
    let w = |level: u32, a: u32| SuLevelWeight::new(2, level, [a as i64]).map_err(ferr);
    let table: [(u32, u32, u32, &[u32]); 3] =
        [(2, 1, 1, &[0, 2]), (1, 1, 1, &[0]), (2, 2, 2, &[0])];
    for (level, a, b, expect) in table {
        let got = fusion_product(&w(level, a)?, &w(level, b)?, None).map_err(ferr)?;
        let mut want = BTreeMap::new();
        for &x in expect {
            want.insert(w(level, x)?, BigInt::from(1));
        }
        if got != want {
            return Err(format!("V{a} ⊛ V{b} at level {level} gave {got:?}"));
        }
    }
    Ok(())
}

/// In R(U(2)₍₃,₅₎) the central basis weight (1,1) must permute the
/// basis, send (2,1) to (3,2), and return to the start after 5 steps.
fn verlinde_center_recursion() -> Result<(), String> {
    let w = |parts: &[u32]| UrWeight::new(2, 5, parts.iter().copied()).map_err(ferr);
    let vc = w(&[1, 1])?;
    let start = w(&[2, 1])?;
    let step = |x: &UrWeight| -> Result<UrWeight, String> {
        let sum = verlinde_ur_basis_product(&vc, x, None).map_err(ferr)?;
        if sum.len() != 1 || sum.values().next() != Some(&BigInt::from(1)) {
            return Err(format!("central multiplication is not a permutation: {sum:?}"));
        }
        Ok(sum.into_keys().next().unwrap())
    };
    let once = step(&start)?;
    if once.parts() != [3, 2] {
        return Err(format!("V(1,1) ⊛ V(2,1) gave V{:?}, expected V(3,2)", once.parts()));
    }
    let mut cur = start.clone();
    for _ in 0..5 {
        cur = step(&cur)?;
    }
    if cur != start {
        return Err(format!("five central steps returned V{:?}, not the start", cur.parts()));
    }
    Ok(())
}

/// Dropping records the exact LP marks as implied must never change the
/// feasible set, and must never grow the system.
fn lp_filter_equivalence() -> Result<(), String> {
    for (n, l) in [(2u32, 3u32), (3, 3)] {
        let sys = generate_multiplicative(n, l, None).map_err(ferr)?;
        let filtered = lp::filter_redundant(&sys);
        if filtered.inequalities.len() > sys.inequalities.len() {
            return Err(format!("redundancy filter grew the n={n}, l={l} system"));
        }
        if !lp::systems_equivalent(&sys, &filtered).map_err(ferr)? {
            return Err(format!("filtered n={n}, l={l} system is not equivalent to the original"));
        }
    }
    Ok(())
}

/// Eigenvalue tuples of actual identity products must satisfy every
/// generated inequality (the description is necessary).
fn sampling_necessity(trials: u64) -> Result<(), String> {
    for (n, l) in [(2u32, 3u32), (3, 3)] {
        let sys = generate_multiplicative(n, l, None).map_err(ferr)?;
        let report = verify_products(&sys, trials, 11, 1e-9).map_err(ferr)?;
        if !report.violations.is_empty() {
            return Err(format!(
                "{} of {trials} random SU({n}) products violated the description \
                 (worst excess {:.3e})",
                report.violations.len(),
                report.max_violation
            ));
        }
    }
    Ok(())
}

/// Tuple files must survive a serialize → parse → serialize cycle
/// byte-identically.
fn tuple_json_round_trip() -> Result<(), String> {
    let q = alcove::rat;
    let cases = [
        EigenTuple::new(SystemKind::Multiplicative, vec![vec![q(1, 4), q(-1, 4)]; 3]),
        EigenTuple::new(SystemKind::Additive, vec![vec![q(1, 2), q(0, 1), q(-1, 2)]; 3]),
    ];
    for tuple in cases {
        let tuple = tuple.map_err(ferr)?;
        let body = serde_json::to_string(&tuple).map_err(ferr)?;
        let back: EigenTuple = serde_json::from_str(&body).map_err(ferr)?;
        if back != tuple {
            return Err("tuple changed across a JSON round trip".into());
        }
        let body2 = serde_json::to_string(&back).map_err(ferr)?;
        if body != body2 {
            return Err("tuple JSON is not byte-stable across a round trip".into());
        }
    }
    Ok(())
}

/// The matrix search must succeed on an interior member and keep a
/// positive residual on a tuple outside the polytope.
fn realizer_split() -> Result<(), String> {
    let q = alcove::rat;
    let opts = RealizeOptions { tol: 1e-6, max_iter: 4000, restarts: 2, seed: 1 };
    let member = EigenTuple::new(SystemKind::Multiplicative, vec![vec![q(1, 4), q(-1, 4)]; 3])
        .map_err(ferr)?;
    let out = realize(&member, &opts).map_err(ferr)?;
    if !out.is_realized() || out.residual() > 1e-6 {
        return Err(format!("interior member not realized (residual {:.3e})", out.residual()));
    }
    let non_member = EigenTuple::new(SystemKind::Multiplicative, vec![vec![q(1, 2), q(-1, 2)]; 3])
        .map_err(ferr)?;
    let out = realize(&non_member, &opts).map_err(ferr)?;
    if out.is_realized() || out.residual() < 1e-3 {
        return Err(format!(
            "tuple outside the polytope reported realized (residual {:.3e})",
            out.residual()
        ));
    }
    Ok(())
}

/// Cached product entries must be bit-identical to fresh computations:
/// an in-memory round trip first, then every entry of the on-disk cache
/// (unless --no-cache).
fn cache_bit_identity(no_cache: bool) -> Result<(), String> {
    let lhs = Partition::new([2u32, 1]).map_err(ferr)?;
    let rhs = lhs.clone();
    let terms = crate::quantum_terms(2, 4, &lhs, &rhs).map_err(cli_msg)?;
    let cached = cache::to_cached(&terms);
    let s1 = serde_json::to_string(&cached).map_err(ferr)?;
    let key = cache::key(2, 4, &lhs, &rhs);
    let back = cache::from_cached(&key, &cached).map_err(cli_msg)?;
    let s2 = serde_json::to_string(&cache::to_cached(&back)).map_err(ferr)?;
    if s1 != s2 {
        return Err("in-memory cache round trip is not bit-identical".into());
    }
    if no_cache {
        return Ok(());
    }
    if let Some(store) = cache::Store::open(false).map_err(cli_msg)? {
        for (key, stored) in store.entries() {
            let (r, n, lhs, rhs) = cache::parse_key(key).map_err(cli_msg)?;
            let fresh = cache::to_cached(&crate::quantum_terms(r, n, &lhs, &rhs).map_err(cli_msg)?);
            if &fresh != stored {
                return Err(format!(
                    "cache entry {key:?} disagrees with a fresh computation; delete {} to rebuild",
                    cache::dir().join("products.json").display()
                ));
            }
        }
    }
    Ok(())
}
