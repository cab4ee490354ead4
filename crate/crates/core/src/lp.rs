//! Exact rational linear programming for redundancy certificates.
//!
//! A dense primal simplex over `BigRational` with Bland's anti-cycling
//! rule.  Free variables are split as x = u − v with u, v ≥ 0.  Every
//! constraint family this crate emits — chamber order, trace conditions
//! written as two inequalities, the alcove spread bound, and facet
//! inequalities with d ≥ 0 — has a nonnegative right-hand side, so the
//! all-slack basis is always feasible and no phase-1 is needed (asserted).
//!
//! An inequality f(x) ≤ c is *redundant* for a system S when
//! max { f(x) : x satisfies S } ≤ c; with exact pivoting this maximum is
//! a certificate, not an approximation.

use num_traits::Zero;

use crate::alcove::{rat_int, Rat};
use crate::error::{Error, Result};
use crate::polytope::{Inequality, InequalitySystem, SystemKind};

/// A dense row: coeffs · x ≤ rhs over free variables x.
pub type Row = (Vec<Rat>, Rat);

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LpOutcome {
    Bounded(Rat),
    Unbounded,
}

/// Maximizes `objective · x` subject to the rows.  Panics if a row has a
/// negative right-hand side (callers never produce one).
pub fn maximize(objective: &[Rat], rows: &[Row]) -> LpOutcome {
    let m = objective.len();
    let k = rows.len();
    let width = 2 * m + k;
    let zero = rat_int(0);

    let mut a: Vec<Vec<Rat>> = Vec::with_capacity(k);
    let mut rhs: Vec<Rat> = Vec::with_capacity(k);
    for (idx, (coeffs, b)) in rows.iter().enumerate() {
        assert_eq!(coeffs.len(), m, "row width mismatch");
        assert!(*b >= zero, "slack basis needs nonnegative rhs");
        let mut row = vec![zero.clone(); width];
        for (j, c) in coeffs.iter().enumerate() {
            row[j] = c.clone();
            row[m + j] = -c.clone();
        }
        row[2 * m + idx] = rat_int(1);
        a.push(row);
        rhs.push(b.clone());
    }
    let mut obj = vec![zero.clone(); width];
    for (j, c) in objective.iter().enumerate() {
        obj[j] = c.clone();
        obj[m + j] = -c.clone();
    }
    let mut value = zero.clone();
    let mut basis: Vec<usize> = (0..k).map(|i| 2 * m + i).collect();

    loop {
        // Bland: the entering column is the smallest improving index.
        let entering = match (0..width).find(|&j| obj[j] > zero) {
            Some(e) => e,
            None => return LpOutcome::Bounded(value),
        };
        // Ratio test; ties leave the smallest basis variable (Bland).
        let mut pivot: Option<(usize, Rat)> = None;
        for i in 0..k {
            if a[i][entering] > zero {
                let theta = &rhs[i] / &a[i][entering];
                let better = match &pivot {
                    None => true,
                    Some((pi, best)) => theta < *best || (theta == *best && basis[i] < basis[*pi]),
                };
                if better {
                    pivot = Some((i, theta));
                }
            }
        }
        let (pr, _) = match pivot {
            Some(p) => p,
            None => return LpOutcome::Unbounded,
        };
        // Normalize the pivot row, then eliminate the column elsewhere.
        let p = a[pr][entering].clone();
        for x in a[pr].iter_mut() {
            *x = &*x / &p;
        }
        rhs[pr] = &rhs[pr] / &p;
        let prow = a[pr].clone();
        let prhs = rhs[pr].clone();
        for i in 0..k {
            if i == pr || a[i][entering].is_zero() {
                continue;
            }
            let f = a[i][entering].clone();
            for j in 0..width {
                let t = &prow[j] * &f;
                a[i][j] -= t;
            }
            rhs[i] -= &prhs * &f;
        }
        let f = obj[entering].clone();
        if !f.is_zero() {
            for j in 0..width {
                let t = &prow[j] * &f;
                obj[j] -= t;
            }
            value += &prhs * &f;
        }
        basis[pr] = entering;
    }
}

/// Whether `target` (coeffs ≤ rhs) holds everywhere on the region cut out
/// by `rows`: max coeffs·x over the region is bounded and ≤ rhs.
pub fn implied(rows: &[Row], target: &Row) -> bool {
    match maximize(&target.0, rows) {
        LpOutcome::Bounded(v) => v <= target.1,
        LpOutcome::Unbounded => false,
    }
}

/// The implicit constraints of a system, as LP rows over the l·n
/// variables x_{k,i} (point k, coordinate i, row-major).
///
/// Multiplicative: per point, chamber order, trace zero (two rows), and
/// spread ≤ 1.  Additive: per-point chamber order plus one global
/// trace-zero pair.
pub fn base_rows(kind: SystemKind, n: u32, l: u32) -> Vec<Row> {
    let n = n as usize;
    let l = l as usize;
    let dim = n * l;
    let zero = rat_int(0);
    let mut rows: Vec<Row> = Vec::new();
    let var = |k: usize, i: usize| k * n + i;
    for k in 0..l {
        for i in 0..n - 1 {
            // x_{k,i+1} − x_{k,i} ≤ 0
            let mut c = vec![zero.clone(); dim];
            c[var(k, i + 1)] = rat_int(1);
            c[var(k, i)] = rat_int(-1);
            rows.push((c, zero.clone()));
        }
        if kind == SystemKind::Multiplicative {
            let mut plus = vec![zero.clone(); dim];
            let mut minus = vec![zero.clone(); dim];
            for i in 0..n {
                plus[var(k, i)] = rat_int(1);
                minus[var(k, i)] = rat_int(-1);
            }
            rows.push((plus, zero.clone()));
            rows.push((minus, zero.clone()));
            let mut spread = vec![zero.clone(); dim];
            spread[var(k, 0)] = rat_int(1);
            spread[var(k, n - 1)] = rat_int(-1);
            rows.push((spread, rat_int(1)));
        }
    }
    if kind == SystemKind::Additive {
        let plus = vec![rat_int(1); dim];
        let minus = vec![rat_int(-1); dim];
        rows.push((plus, zero.clone()));
        rows.push((minus, zero));
    }
    rows
}

/// A facet inequality as an LP row over the same variables.
pub fn inequality_row(ineq: &Inequality) -> Row {
    let n = ineq.n() as usize;
    let l = ineq.l() as usize;
    let mut c = vec![rat_int(0); n * l];
    for (k, idx) in ineq.subsets().iter().enumerate() {
        for &i in idx.elems() {
            c[k * n + (i as usize - 1)] = rat_int(1);
        }
    }
    (c, rat_int(ineq.d() as i64))
}

/// Removes every inequality that is implied by the remaining records plus
/// the implicit chamber/alcove constraints.  Each removal preserves the
/// feasible region exactly, so the output cuts out the same polytope.
pub fn filter_redundant(sys: &InequalitySystem) -> InequalitySystem {
    let base = base_rows(sys.kind, sys.n, sys.l);
    let rows: Vec<Row> = sys.inequalities.iter().map(inequality_row).collect();
    let mut keep = vec![true; rows.len()];
    for i in 0..rows.len() {
        let mut active: Vec<Row> = base.clone();
        for (j, row) in rows.iter().enumerate() {
            if j != i && keep[j] {
                active.push(row.clone());
            }
        }
        if implied(&active, &rows[i]) {
            keep[i] = false;
        }
    }
    InequalitySystem {
        kind: sys.kind,
        n: sys.n,
        l: sys.l,
        inequalities: sys
            .inequalities
            .iter()
            .zip(&keep)
            .filter(|(_, &k)| k)
            .map(|(q, _)| q.clone())
            .collect(),
    }
}

/// Mutual implication of two systems over the same implicit constraints:
/// they cut out the same region iff each record of one is implied by the
/// whole of the other.
pub fn systems_equivalent(a: &InequalitySystem, b: &InequalitySystem) -> Result<bool> {
    if a.kind != b.kind || a.n != b.n || a.l != b.l {
        return Err(Error::InvalidSystem("equivalence needs matching kind and dimensions".into()));
    }
    let base = base_rows(a.kind, a.n, a.l);
    let with = |sys: &InequalitySystem| -> Vec<Row> {
        let mut rows = base.clone();
        rows.extend(sys.inequalities.iter().map(inequality_row));
        rows
    };
    let rows_a = with(a);
    let rows_b = with(b);
    for q in &b.inequalities {
        if !implied(&rows_a, &inequality_row(q)) {
            return Ok(false);
        }
    }
    for q in &a.inequalities {
        if !implied(&rows_b, &inequality_row(q)) {
            return Ok(false);
        }
    }
    Ok(true)
}
