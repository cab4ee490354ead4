//! Verlinde fusion rings: SU(n) at a level, and U(r) via quantum
//! cohomology at q = 1.
//!
//! The fusion product of level-N representations of SU(n) is computed by
//! the affine Weyl reduction of the classical tensor product: decompose
//! V_λ ⊗ V_μ with Littlewood–Richardson, shift each term by ρ, and fold
//! the result into the interior of the level-N alcove with the
//! alternating action of the affine Weyl group at M = N + n —
//!
//! ```text
//! V_ν  ~  (−1)^{ℓ(w)} V_{w(ν+ρ)−ρ},      walls ↦ 0.
//! ```
//!
//! Concretely: sort ν+ρ (sign = permutation parity, ties die), and while
//! the top-to-bottom span exceeds M, reflect the extremes
//! (s_1, s_n) ↦ (s_n + M, s_1 − M) with a sign flip; a span exactly M is
//! a wall.  For levels N ≥ |λ| + |μ| nothing folds and the product is the
//! classical one.
//!
//! The U(r) Verlinde algebra R(U(r)_{n−r,n}) is presented here as the
//! quotient QH*(G(r,n)) / (q = 1): basis weights are the partitions in
//! the r × (n−r) box and the structure constants are sums of
//! Gromov–Witten invariants over all degrees.  The independent
//! affine-Weyl route for the same ring lives in the integration tests as
//! an oracle.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lr::{self, LrCache};
use crate::partition::Partition;
use crate::polytope::{EigenTuple, SystemKind};
use crate::quantum::{self, QuantumClass};
use crate::schubert::GrassCtx;

/// A dominant weight of SU(n) at a level: normalized so λ_n = 0 (weights
/// differing by the all-ones vector name the same representation), with
/// λ_1 ≤ level.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct SuLevelWeight {
    n: u32,
    level: u32,
    parts: Vec<u32>,
}

impl SuLevelWeight {
    /// Accepts any weakly decreasing integer vector of length ≤ n
    /// (missing trailing coordinates read as 0), normalizes it, and
    /// enforces the level bound.
    pub fn new<I: IntoIterator<Item = i64>>(n: u32, level: u32, coords: I) -> Result<Self> {
        let mut full: Vec<i64> = coords.into_iter().collect();
        if n < 2 || full.len() > n as usize {
            return Err(Error::InvalidWeight(format!(
                "weight of length {} for SU({})",
                full.len(),
                n
            )));
        }
        full.resize(n as usize, 0);
        if full.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidWeight(format!(
                "not dominant: {:?} is not weakly decreasing",
                full
            )));
        }
        let last = full[n as usize - 1];
        let mut parts: Vec<u32> = full.iter().map(|&c| (c - last) as u32).collect();
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.first().copied().unwrap_or(0) > level {
            return Err(Error::InvalidWeight(format!(
                "weight {:?} exceeds level {} for SU({})",
                parts, level, n
            )));
        }
        Ok(SuLevelWeight { n, level, parts })
    }

    pub fn zero(n: u32, level: u32) -> Self {
        SuLevelWeight { n, level, parts: Vec::new() }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Normalized parts, trailing zeros trimmed (so `&[]` is the trivial
    /// weight).
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn partition(&self) -> Partition {
        Partition::from_raw(self.parts.clone())
    }

    /// Highest weight of the dual representation:
    /// λ*_i = λ_1 − λ_{n+1−i}.
    pub fn dual(&self) -> SuLevelWeight {
        let head = self.parts.first().copied().unwrap_or(0);
        let full: Vec<u32> =
            (0..self.n as usize).map(|i| self.parts.get(i).copied().unwrap_or(0)).collect();
        let mut parts: Vec<u32> = full.iter().rev().map(|&c| head - c).collect();
        while parts.last() == Some(&0) {
            parts.pop();
        }
        SuLevelWeight { n: self.n, level: self.level, parts }
    }
}

/// A formal nonnegative-integer combination of level weights.
pub type FusionSum = BTreeMap<SuLevelWeight, BigInt>;

fn compat(a: &SuLevelWeight, b: &SuLevelWeight) -> Result<(u32, u32)> {
    if a.n != b.n || a.level != b.level {
        return Err(Error::InvalidWeight(format!(
            "mixing SU({}) level {} with SU({}) level {}",
            a.n, a.level, b.n, b.level
        )));
    }
    Ok((a.n, a.level))
}

/// Sorts descending, tracking the permutation parity; `None` when two
/// entries collide (a Weyl wall).
fn sort_signed(mut s: Vec<i64>) -> Option<(i8, Vec<i64>)> {
    let mut sign = 1i8;
    // Insertion sort: each swap of adjacent entries flips the sign.
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

/// Folds ρ-shifted coordinates into the open level alcove
/// {s strictly decreasing, s_1 − s_n < M}; `None` on a wall.
fn affine_reduce(s: Vec<i64>, m: i64) -> Option<(i8, Vec<i64>)> {
    let mut sign = 1i8;
    let mut s = s;
    for _ in 0..100_000 {
        let (sg, sorted) = sort_signed(s)?;
        sign *= sg;
        let span = sorted[0] - sorted[sorted.len() - 1];
        if span == m {
            return None;
        }
        if span < m {
            return Some((sign, sorted));
        }
        let mut next = sorted;
        let last = next.len() - 1;
        let (hi, lo) = (next[0], next[last]);
        next[0] = lo + m;
        next[last] = hi - m;
        sign = -sign;
        s = next;
    }
    unreachable!("affine reduction failed to terminate");
}

/// V_λ ⊛_N V_μ as a formal sum of level-N weights.
pub fn fusion_product(
    a: &SuLevelWeight,
    b: &SuLevelWeight,
    cache: Option<&LrCache>,
) -> Result<FusionSum> {
    let (n, level) = compat(a, b)?;
    let m = (level + n) as i64;
    let rho: Vec<i64> = (0..n as i64).rev().collect();
    let mut out = FusionSum::new();
    for (nu, c) in lr::expand_product(&a.partition(), &b.partition(), n, None, cache).iter() {
        let s: Vec<i64> = (0..n as usize).map(|j| nu.part(j) as i64 + rho[j]).collect();
        if let Some((sign, folded)) = affine_reduce(s, m) {
            let coords: Vec<i64> = folded.iter().zip(&rho).map(|(s, r)| s - r).collect();
            let w = SuLevelWeight::new(n, level, coords)?;
            let signed = if sign < 0 { -c.clone() } else { c.clone() };
            use std::collections::btree_map::Entry;
            match out.entry(w) {
                Entry::Vacant(e) => {
                    e.insert(signed);
                }
                Entry::Occupied(mut e) => {
                    *e.get_mut() += signed;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
            }
        }
    }
    debug_assert!(out.values().all(|c| c.is_positive()));
    Ok(out)
}

/// Multiplicity of V_ν in V_λ ⊛_N V_μ.
pub fn fusion_coefficient(
    a: &SuLevelWeight,
    b: &SuLevelWeight,
    target: &SuLevelWeight,
    cache: Option<&LrCache>,
) -> Result<BigInt> {
    compat(a, target)?;
    Ok(fusion_product(a, b, cache)?.remove(target).unwrap_or_else(BigInt::zero))
}

/// Left-to-right iterated fusion product of a list of weights (empty
/// list = the trivial class).
pub fn fusion_product_multi(
    weights: &[SuLevelWeight],
    n: u32,
    level: u32,
    cache: Option<&LrCache>,
) -> Result<FusionSum> {
    let mut acc = FusionSum::new();
    acc.insert(SuLevelWeight::zero(n, level), BigInt::one());
    for w in weights {
        if w.n != n || w.level != level {
            return Err(Error::InvalidWeight("mixed groups in fusion list".into()));
        }
        let mut next = FusionSum::new();
        for (u, cu) in &acc {
            for (v, cv) in fusion_product(u, w, cache)? {
                let slot = next.entry(v).or_insert_with(BigInt::zero);
                *slot += cu * cv;
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// A basis weight of the U(r) Verlinde algebra R(U(r)_{n−r,n}): a
/// partition in the r × (n−r) window.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct UrWeight {
    r: u32,
    n: u32,
    parts: Vec<u32>,
}

impl UrWeight {
    pub fn new<I: IntoIterator<Item = u32>>(r: u32, n: u32, parts: I) -> Result<Self> {
        let ctx = GrassCtx::new(r, n)?;
        let p = Partition::new(parts).map_err(|e| Error::InvalidWeight(e.to_string()))?;
        if !ctx.fits(&p) {
            return Err(Error::InvalidWeight(format!(
                "{} is outside the 0 ≤ λ_i ≤ {} window for U({})",
                p,
                n - r,
                r
            )));
        }
        Ok(UrWeight { r, n, parts: p.parts().to_vec() })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn partition(&self) -> Partition {
        Partition::from_raw(self.parts.clone())
    }

    /// The determinant-line generator V_c = V_{(1,…,1)}.
    pub fn central(r: u32, n: u32) -> Result<Self> {
        UrWeight::new(r, n, vec![1; r as usize])
    }
}

/// A formal combination of U(r) Verlinde basis weights.
pub type VerlindeSum = BTreeMap<UrWeight, BigInt>;

/// Basis product in R(U(r)_{n−r,n}): the quantum product evaluated at
/// q = 1, i.e. Gromov–Witten structure constants summed over degree.
pub fn verlinde_ur_basis_product(
    a: &UrWeight,
    b: &UrWeight,
    cache: Option<&LrCache>,
) -> Result<VerlindeSum> {
    if a.r != b.r || a.n != b.n {
        return Err(Error::InvalidWeight("Verlinde product across different (r,n)".into()));
    }
    let ctx = GrassCtx::new(a.r, a.n)?;
    let qa = QuantumClass::basis(ctx, a.partition(), 0)?;
    let qb = QuantumClass::basis(ctx, b.partition(), 0)?;
    let prod = quantum::quantum_product(&qa, &qb, cache)?;
    let mut out = VerlindeSum::new();
    for ((nu, _d), c) in prod.terms() {
        let w = UrWeight::new(a.r, a.n, nu.parts().iter().copied())?;
        let slot = out.entry(w).or_insert_with(BigInt::zero);
        *slot += c.clone();
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// Bilinear extension of the basis product to formal sums.
pub fn verlinde_ur_product(
    a: &VerlindeSum,
    b: &VerlindeSum,
    cache: Option<&LrCache>,
) -> Result<VerlindeSum> {
    let mut out = VerlindeSum::new();
    for (u, cu) in a {
        for (v, cv) in b {
            for (w, c) in verlinde_ur_basis_product(u, v, cache)? {
                let slot = out.entry(w).or_insert_with(BigInt::zero);
                *slot += c * cu * cv;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// Outcome of the representation-theoretic membership route.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FusionSupport {
    /// V_{Nξ_1} ⊛ … ⊛ V_{Nξ_{l−1}} contains the dual of V_{Nξ_l}.
    Supported,
    /// The scaled weights are integral but the product misses the target.
    Unsupported,
    /// Some N·ξ_k is not an integral weight; the test does not apply.
    Inapplicable,
}

/// Tests the scaled tuple N·ξ for fusion support.  `Supported` implies
/// polytope membership of ξ (the forward direction only; the converse
/// would need a search over levels).
pub fn fusion_membership(
    tuple: &EigenTuple,
    level: u32,
    cache: Option<&LrCache>,
) -> Result<FusionSupport> {
    if tuple.kind() != SystemKind::Multiplicative {
        return Err(Error::InvalidTuple("fusion membership applies to alcove tuples".into()));
    }
    let n = tuple.n();
    let scale = crate::alcove::rat_int(level as i64);
    let mut weights = Vec::with_capacity(tuple.l() as usize);
    for point in tuple.points() {
        // N·ξ is an integral weight of SU(n) when its coordinate
        // *differences* are integers (the lattice is the traceless
        // projection of Z^n), so measure against the last coordinate.
        let base = point.last().unwrap() * &scale;
        let mut coords = Vec::with_capacity(n as usize);
        for c in point {
            let scaled = c * &scale - &base;
            if !scaled.is_integer() {
                return Ok(FusionSupport::Inapplicable);
            }
            coords.push(
                num_traits::ToPrimitive::to_i64(&scaled.to_integer())
                    .ok_or_else(|| Error::Internal("scaled weight exceeds i64".into()))?,
            );
        }
        weights.push(SuLevelWeight::new(n, level, coords)?);
    }
    let target = weights.pop().unwrap().dual();
    let product = fusion_product_multi(&weights, n, level, cache)?;
    if product.get(&target).is_some_and(|c| c.is_positive()) {
        Ok(FusionSupport::Supported)
    } else {
        Ok(FusionSupport::Unsupported)
    }
}
