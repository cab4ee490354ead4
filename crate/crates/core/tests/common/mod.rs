//! Independent oracles for the integration suites.  Everything here is
//! implemented by a *different* algorithm than the library under test:
//! Schur polynomials by tableau enumeration instead of skew LR counting,
//! rim hooks by explicit border-strip surgery on diagrams instead of
//! beta numbers, the U(r) Verlinde ring by affine reflections instead of
//! quantum products.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use qsc_core::Partition;
use rand::Rng;

/// Monomial expansion of the Schur polynomial s_λ(x_1, …, x_vars):
/// enumerate semistandard tableaux (rows weakly increasing, columns
/// strictly increasing, entries ≤ vars) and collect content exponents.
pub fn ssyt_monomials(shape: &Partition, vars: usize) -> BTreeMap<Vec<u32>, BigInt> {
    let mut out = BTreeMap::new();
    if shape.len() > vars {
        return out;
    }
    if shape.is_empty() {
        out.insert(vec![0; vars], BigInt::one());
        return out;
    }
    let rows = shape.len();
    let mut grid: Vec<Vec<u32>> = (0..rows).map(|r| vec![0; shape.part(r) as usize]).collect();
    let mut content = vec![0u32; vars];
    fn rec(
        shape: &Partition,
        vars: usize,
        row: usize,
        col: usize,
        grid: &mut Vec<Vec<u32>>,
        content: &mut Vec<u32>,
        out: &mut BTreeMap<Vec<u32>, BigInt>,
    ) {
        if row == shape.len() {
            let slot = out.entry(content.clone()).or_insert_with(BigInt::zero);
            *slot += 1;
            return;
        }
        if col == shape.part(row) as usize {
            rec(shape, vars, row + 1, 0, grid, content, out);
            return;
        }
        let lo = {
            let left = if col > 0 { grid[row][col - 1] } else { 1 };
            let above =
                if row > 0 && col < grid[row - 1].len() { grid[row - 1][col] + 1 } else { 1 };
            left.max(above)
        };
        for v in lo..=vars as u32 {
            grid[row][col] = v;
            content[v as usize - 1] += 1;
            rec(shape, vars, row, col + 1, grid, content, out);
            content[v as usize - 1] -= 1;
        }
        grid[row][col] = 0;
    }
    rec(shape, vars, 0, 0, &mut grid, &mut content, &mut out);
    out
}

/// Expands s_λ·s_μ in `vars` variables into Schur polynomials by
/// repeatedly stripping the lexicographically leading monomial (whose
/// exponent is automatically a partition, the expansion being
/// unitriangular).  Returns the terms with ≤ vars rows, sorted.
pub fn schur_product_oracle(
    lam: &Partition,
    mu: &Partition,
    vars: usize,
) -> Vec<(Partition, BigInt)> {
    let a = ssyt_monomials(lam, vars);
    let b = ssyt_monomials(mu, vars);
    let mut prod: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
    for (ea, ca) in &a {
        for (eb, cb) in &b {
            let key: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let slot = prod.entry(key).or_insert_with(BigInt::zero);
            *slot += ca * cb;
        }
    }
    prod.retain(|_, c| !c.is_zero());
    let mut out = Vec::new();
    while let Some((exp, coeff)) = prod.last_key_value().map(|(k, v)| (k.clone(), v.clone())) {
        assert!(
            exp.windows(2).all(|w| w[0] >= w[1]),
            "leading exponent {:?} of a symmetric polynomial must be a partition",
            exp
        );
        let nu = Partition::new(exp.iter().copied()).unwrap();
        for (e, c) in ssyt_monomials(&nu, vars) {
            let entry = prod.entry(e.clone()).or_insert_with(BigInt::zero);
            *entry -= c * &coeff;
            if entry.is_zero() {
                prod.remove(&e);
            }
        }
        out.push((nu, coeff));
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

/// All border strips of `n` cells removable from `shape`, reported as
/// (resulting shape, height).  A strip spanning rows i..=j leaves
/// μ_k = λ_{k+1} − 1 inside the span and μ_j = λ_i + (j−i) − n on its
/// bottom row.
fn removable_strips(shape: &Partition, n: u32) -> Vec<(Partition, u32)> {
    let rows = shape.len();
    let mut out = Vec::new();
    for i in 0..rows {
        for j in i..rows {
            let bottom = shape.part(i) as i64 + (j as i64 - i as i64) - n as i64;
            let next = shape.part(j + 1) as i64;
            if bottom < next || bottom > shape.part(j) as i64 - 1 {
                continue;
            }
            let mut mu: Vec<u32> = (0..rows).map(|k| shape.part(k)).collect();
            for (k, m) in mu.iter_mut().enumerate().take(j).skip(i) {
                *m = shape.part(k + 1).saturating_sub(1);
            }
            mu[j] = bottom as u32;
            match Partition::new(mu) {
                Ok(p) => out.push((p, (j - i + 1) as u32)),
                Err(_) => unreachable!("strip removal left a non-partition"),
            }
        }
    }
    out
}

/// Diagram-surgery counterpart of the beta-number reduction: remove
/// random n-cell border strips (sign (−1)^{r − height} each) until the
/// shape fits the r × (n−r) box, or no strip is removable (`None`).
pub fn rim_hook_oracle(
    rho: &Partition,
    r: u32,
    n: u32,
    rng: &mut impl Rng,
) -> Option<(Partition, u32, i8)> {
    assert!(rho.len() as u32 <= r);
    let mut shape = rho.clone();
    let mut degree = 0u32;
    let mut sign = 1i8;
    while !(shape.len() as u32 <= r && shape.part(0) <= n - r) {
        let strips = removable_strips(&shape, n);
        if strips.is_empty() {
            return None;
        }
        let (next, height) = strips[rng.gen_range(0..strips.len())].clone();
        if (r - height) % 2 == 1 {
            sign = -sign;
        }
        shape = next;
        degree += 1;
    }
    Some((shape, degree, sign))
}

/// Signed descending sort; `None` when two entries tie.
fn sort_signed(mut s: Vec<i64>) -> Option<(i8, Vec<i64>)> {
    let mut sign = 1i8;
    for i in 1..s.len() {
        let mut j = i;
        while j > 0 && s[j] > s[j - 1] {
            s.swap(j, j - 1);
            sign = -sign;
            j -= 1;
        }
    }
    if s.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sign, s))
}

/// The U(r) Verlinde ring R(U(r)_{n−r,n}) by its presentation: classical
/// GL(r) Littlewood–Richardson expansion, then each term reduced by
/// (a) the signed affine SU(r) reflections at M = n acting on ν + ρ and
/// (b) the sign-free rotation V_λ ∼ V_{(λ_2−1,…,λ_r−1,λ_1−(n−r+1))}
/// (and its inverse) that implements the U(1) factor, interleaved until
/// the weight lies in the 0 ≤ λ_i ≤ n−r window.
pub fn verlinde_ur_oracle(
    lam: &Partition,
    mu: &Partition,
    r: u32,
    n: u32,
) -> BTreeMap<Vec<u32>, BigInt> {
    let rho: Vec<i64> = (0..r as i64).rev().collect();
    let window = (n - r) as i64;
    let mut out: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
    'terms: for (nu, c) in qsc_core::lr::expand_product(lam, mu, r, None, None).iter() {
        let mut coords: Vec<i64> = (0..r as usize).map(|k| nu.part(k) as i64).collect();
        let mut sign = 1i8;
        for _ in 0..10_000 {
            // (a) fold into the dominant strict chamber at level n.
            let mut s: Vec<i64> = coords.iter().zip(&rho).map(|(c, r)| c + r).collect();
            loop {
                let Some((sg, sorted)) = sort_signed(s) else {
                    continue 'terms; // wall: the term dies
                };
                sign *= sg;
                let span = sorted[0] - sorted[r as usize - 1];
                if span == n as i64 {
                    continue 'terms;
                }
                if span < n as i64 {
                    s = sorted;
                    break;
                }
                let mut next = sorted;
                let last = next.len() - 1;
                let (hi, lo) = (next[0], next[last]);
                next[0] = lo + n as i64;
                next[last] = hi - n as i64;
                sign = -sign;
                s = next;
            }
            coords = s.iter().zip(&rho).map(|(s, r)| s - r).collect();
            // (b) rotate into the window if needed, else done.
            if coords[0] > window {
                let mut rotated: Vec<i64> = coords[1..].iter().map(|&c| c - 1).collect();
                rotated.push(coords[0] - (window + 1));
                coords = rotated;
            } else if coords[r as usize - 1] < 0 {
                let mut rotated = vec![coords[r as usize - 1] + window + 1];
                rotated.extend(coords[..r as usize - 1].iter().map(|&c| c + 1));
                coords = rotated;
            } else {
                let key: Vec<u32> = coords.iter().map(|&c| c as u32).collect();
                let signed = if sign < 0 { -c.clone() } else { c.clone() };
                let slot = out.entry(key).or_insert_with(BigInt::zero);
                *slot += signed;
                if slot.is_zero() {
                    let key: Vec<u32> = coords.iter().map(|&c| c as u32).collect();
                    out.remove(&key);
                }
                continue 'terms;
            }
        }
        panic!("Verlinde reduction failed to terminate");
    }
    out
}

/// SU(2) level-N fusion by the closed form: V_a ⊛ V_b = ⊕ V_c over
/// c ≡ a+b (mod 2) with |a−b| ≤ c ≤ min(a+b, 2N−a−b).
pub fn su2_fusion_oracle(a: u32, b: u32, level: u32) -> Vec<u32> {
    let lo = a.abs_diff(b);
    let hi = (a + b).min(2 * level - a - b);
    (lo..=hi).step_by(2).collect()
}

/// Uniform-ish random partition inside a rows × cols box.
pub fn random_partition(rng: &mut impl Rng, rows: u32, cols: u32) -> Partition {
    let mut parts = Vec::new();
    let mut cap = cols;
    for _ in 0..rows {
        let v = rng.gen_range(0..=cap);
        parts.push(v);
        cap = v;
        if v == 0 {
            break;
        }
    }
    Partition::new(parts).unwrap()
}
