//! Quantum cohomology of the Grassmannian G(r,n).
//!
//! The small quantum ring QH*(G(r,n)) = H*(G(r,n)) ⊗ Z[q] deforms the cup
//! product: the coefficient of σ_ν q^d in σ_λ ⋆ σ_μ is the three-point
//! genus-zero Gromov–Witten invariant counting degree-d rational curves
//! meeting generic translates of the three Schubert varieties.  It can be
//! evaluated by pure combinatorics: expand σ_λ · σ_μ classically with at
//! most r rows but unbounded width, then reduce every too-wide diagram ρ
//! by repeatedly stripping n-cell rim hooks (border strips),
//!
//! ```text
//! σ_ρ  ↦  ε · q^d · σ_ν,   ε = Π_hooks (−1)^{r − height(hook)},
//! ```
//!
//! discarding ρ when no complete sequence of hooks reaches the box.  The
//! reduction is implemented on first-column hook lengths (beta numbers)
//! β_j = ρ_j + r − j: stripping an n-hook is subtracting n from one β_j,
//! valid exactly when the residues of the β_j mod n are pairwise distinct,
//! and the height of the hook is one more than the number of β_k that the
//! lowered value passes.
//!
//! Multi-point invariants come from iterated products, and the Z/n center
//! symmetry ⟨σ_{I_1},…,σ_{I_l}⟩_d = ⟨σ_{c^{m_1}I_1},…,σ_{c^{m_l}I_l}⟩_{d'}
//! (Σ m_k ≡ 0 mod n) is exposed as a transport on index tuples.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lr::{self, CohomologyClass, LrCache};
use crate::partition::Partition;
use crate::schubert::{GrassCtx, SchubertIndex};

/// A finite Z[q]-linear combination of Schubert classes: map from
/// (partition, quantum degree) to coefficient.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuantumClass {
    ctx: GrassCtx,
    terms: BTreeMap<(Partition, u32), BigInt>,
}

impl QuantumClass {
    pub fn zero(ctx: GrassCtx) -> Self {
        QuantumClass { ctx, terms: BTreeMap::new() }
    }

    pub fn unit(ctx: GrassCtx) -> Self {
        let mut c = Self::zero(ctx);
        c.add_term(Partition::empty(), 0, BigInt::one());
        c
    }

    pub fn basis(ctx: GrassCtx, lam: Partition, degree: u32) -> Result<Self> {
        if !ctx.fits(&lam) {
            return Err(Error::InvalidPartition(format!(
                "{} does not fit the {}x{} box",
                lam,
                ctx.r(),
                ctx.cols()
            )));
        }
        let mut c = Self::zero(ctx);
        c.add_term(lam, degree, BigInt::one());
        Ok(c)
    }

    pub fn ctx(&self) -> GrassCtx {
        self.ctx
    }

    pub fn terms(&self) -> &BTreeMap<(Partition, u32), BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, lam: &Partition, degree: u32) -> BigInt {
        self.terms.get(&(lam.clone(), degree)).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, lam: Partition, degree: u32, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        debug_assert!(self.ctx.fits(&lam));
        use std::collections::btree_map::Entry;
        match self.terms.entry((lam, degree)) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// The q^0 coefficients as a classical class.
    pub fn degree_zero_part(&self) -> CohomologyClass {
        let mut out = CohomologyClass::zero(self.ctx);
        for ((lam, d), c) in &self.terms {
            if *d == 0 {
                out.add_term(lam.clone(), c.clone());
            }
        }
        out
    }
}

/// Result of rim-hook reducing one diagram of height ≤ r.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RimHookReduction {
    /// No sequence of n-hook removals reaches the box.
    Discard,
    /// ρ reduced to ν by `degree` hook removals with the given total sign.
    Reduced { nu: Partition, degree: u32, sign: i8 },
}

/// Strips n-cell rim hooks from ρ until it fits the r × (n−r) box.
/// The outcome — including the sign Π (−1)^{r − height} — is independent
/// of the order in which hooks are removed.
pub fn rim_hook_reduce(rho: &Partition, ctx: GrassCtx) -> Result<RimHookReduction> {
    let r = ctx.r() as usize;
    let n = ctx.n() as i64;
    if rho.len() > r {
        return Err(Error::InvalidPartition(format!("{} has more than r = {} rows", rho, r)));
    }
    // Beta numbers: strictly decreasing, β_j = ρ_j + (r−1−j) for 0-based j.
    let mut beta: Vec<i64> = (0..r).map(|j| rho.part(j) as i64 + (r - 1 - j) as i64).collect();
    // A full reduction to the box exists iff the β residues mod n are
    // pairwise distinct: each hook removal is "subtract n from one β".
    let mut seen = vec![false; n as usize];
    for &b in &beta {
        let res = (b % n) as usize;
        if seen[res] {
            return Ok(RimHookReduction::Discard);
        }
        seen[res] = true;
    }
    let mut sign = 1i8;
    let mut degree = 0u32;
    loop {
        // The box holds exactly the diagrams with all β ≤ n−1.
        let (jmax, bmax) =
            beta.iter().enumerate().max_by_key(|&(_, b)| *b).map(|(j, &b)| (j, b)).unwrap();
        if bmax < n {
            break;
        }
        let lowered = bmax - n;
        // Height of the removed hook = 1 + #{β strictly between}.
        let between = beta.iter().filter(|&&b| lowered < b && b < bmax).count();
        if (r - (between + 1)) % 2 == 1 {
            sign = -sign;
        }
        beta[jmax] = lowered;
        degree += 1;
    }
    beta.sort_unstable_by(|a, b| b.cmp(a));
    let parts: Vec<u32> = beta
        .iter()
        .enumerate()
        .map(|(j, &b)| (b - (r - 1 - j) as i64) as u32)
        .filter(|&p| p > 0)
        .collect();
    let nu = Partition::from_raw(parts);
    debug_assert_eq!(rho.size(), nu.size() + ctx.n() as u64 * degree as u64);
    Ok(RimHookReduction::Reduced { nu, degree, sign })
}

/// σ_λ ⋆ σ_μ on basis classes: classical expansion with ≤ r rows, then
/// rim-hook reduction of every term.  `degree_cap` drops terms above a
/// known maximal useful degree (degrees only ever grow in later products).
fn basis_product_capped(
    ctx: GrassCtx,
    lam: &Partition,
    mu: &Partition,
    cache: Option<&LrCache>,
    degree_cap: Option<u32>,
) -> Result<QuantumClass> {
    let mut out = QuantumClass::zero(ctx);
    for (rho, c) in lr::expand_product(lam, mu, ctx.r(), None, cache).iter() {
        match rim_hook_reduce(rho, ctx)? {
            RimHookReduction::Discard => {}
            RimHookReduction::Reduced { nu, degree, sign } => {
                if degree_cap.is_some_and(|cap| degree > cap) {
                    continue;
                }
                let signed = if sign < 0 { -c.clone() } else { c.clone() };
                out.add_term(nu, degree, signed);
            }
        }
    }
    Ok(out)
}

fn product_capped(
    a: &QuantumClass,
    b: &QuantumClass,
    cache: Option<&LrCache>,
    degree_cap: Option<u32>,
) -> Result<QuantumClass> {
    if a.ctx != b.ctx {
        return Err(Error::ContextMismatch(
            "quantum product of classes on different Grassmannians".into(),
        ));
    }
    let ctx = a.ctx;
    let mut out = QuantumClass::zero(ctx);
    for ((lam, da), ca) in &a.terms {
        for ((mu, db), cb) in &b.terms {
            let base = da + db;
            if degree_cap.is_some_and(|cap| base > cap) {
                continue;
            }
            let rest = degree_cap.map(|cap| cap - base);
            let partial = basis_product_capped(ctx, lam, mu, cache, rest)?;
            for ((nu, d), c) in partial.terms() {
                out.add_term(nu.clone(), d + base, c * ca * cb);
            }
        }
    }
    Ok(out)
}

/// The quantum product a ⋆ b (bilinear, commutative, associative; its
/// degree-0 part is the cup product).
pub fn quantum_product(
    a: &QuantumClass,
    b: &QuantumClass,
    cache: Option<&LrCache>,
) -> Result<QuantumClass> {
    product_capped(a, b, cache, None)
}

/// Quantum product that drops terms above `degree_cap`.  Degrees only
/// grow under further multiplication, so capping is sound inside iterated
/// products that will be read off at a fixed degree.
pub fn quantum_product_capped(
    a: &QuantumClass,
    b: &QuantumClass,
    cache: Option<&LrCache>,
    degree_cap: Option<u32>,
) -> Result<QuantumClass> {
    product_capped(a, b, cache, degree_cap)
}

/// The class σ_c = σ_{(1,…,1)} (r ones) whose quantum powers realize the
/// center of SU(n): σ_c^{⋆n} = q^r.
pub fn sigma_c(ctx: GrassCtx) -> Partition {
    Partition::from_raw(vec![1; ctx.r() as usize])
}

/// Multiplies by σ_c^{⋆m} in closed form: a basis class indexed by I maps
/// to q^e σ_{cI} per step, where e = (w(cI) + r − w(I))/n is 1 when 1 ∈ I
/// and 0 otherwise.
pub fn sigma_c_multiply(m: u32, a: &QuantumClass) -> Result<QuantumClass> {
    let ctx = a.ctx;
    let mut terms: Vec<(Partition, u32, BigInt)> =
        a.terms.iter().map(|((lam, d), c)| (lam.clone(), *d, c.clone())).collect();
    for _ in 0..m {
        let mut next = Vec::with_capacity(terms.len());
        for (lam, d, c) in terms {
            let idx = SchubertIndex::from_partition(ctx, &lam)?;
            let shifted = idx.center_act(1);
            let jump = shifted.weight() as i64 + ctx.r() as i64 - idx.weight() as i64;
            debug_assert_eq!(jump.rem_euclid(ctx.n() as i64), 0);
            let e = (jump / ctx.n() as i64) as u32;
            next.push((shifted.to_partition(ctx)?, d + e, c));
        }
        terms = next;
    }
    let mut out = QuantumClass::zero(ctx);
    for (lam, d, c) in terms {
        out.add_term(lam, d, c);
    }
    Ok(out)
}

/// The l-point genus-zero Gromov–Witten invariant
/// ⟨σ_{I_1}, …, σ_{I_l}⟩_d: the coefficient of (λ(*I_l), d) in the
/// iterated quantum product of the first l−1 classes.  Zero unless the
/// codimensions satisfy Σ|λ(I_k)| = r(n−r) + n·d.  Negative d gives 0.
pub fn gw_invariant(
    classes: &[SchubertIndex],
    d: i64,
    ctx: GrassCtx,
    cache: Option<&LrCache>,
) -> Result<BigInt> {
    if classes.is_empty() {
        return Err(Error::ContextMismatch("empty class list".into()));
    }
    for i in classes {
        if i.rank() != ctx.r() || i.n() != ctx.n() {
            return Err(Error::ContextMismatch(format!(
                "class {:?} does not live on G({},{})",
                i,
                ctx.r(),
                ctx.n()
            )));
        }
    }
    if d < 0 {
        return Ok(BigInt::zero());
    }
    let d = d as u64;
    let total: u64 = classes.iter().map(|i| i.codim()).sum();
    if total != ctx.dim() + ctx.n() as u64 * d {
        return Ok(BigInt::zero());
    }
    let d = d as u32;
    let (last, rest) = classes.split_last().unwrap();
    let mut acc = QuantumClass::unit(ctx);
    for idx in rest {
        let b = QuantumClass::basis(ctx, idx.to_partition(ctx)?, 0)?;
        acc = product_capped(&acc, &b, cache, Some(d))?;
        if acc.is_zero() {
            return Ok(BigInt::zero());
        }
    }
    let target = last.dual().to_partition(ctx)?;
    Ok(acc.coefficient(&target, d))
}

/// Transports an index tuple along the center symmetry: each I_k moves to
/// c^{m_k}·I_k and the degree to d' = d + (Σw(I_k) − Σw(I'_k))/n, which the
/// weight bookkeeping makes an integer whenever Σ m_k ≡ 0 (mod n).  The
/// Gromov–Witten invariants of the two tuples agree (d' < 0 forces 0).
pub fn symmetry_transport(
    classes: &[SchubertIndex],
    d: i64,
    shifts: &[i64],
) -> Result<(Vec<SchubertIndex>, i64)> {
    if classes.is_empty() {
        return Err(Error::InvalidTransport("empty tuple".into()));
    }
    if classes.len() != shifts.len() {
        return Err(Error::InvalidTransport(format!(
            "{} classes but {} shifts",
            classes.len(),
            shifts.len()
        )));
    }
    let n = classes[0].n() as i64;
    if classes.iter().any(|i| i.n() as i64 != n) {
        return Err(Error::InvalidTransport("mixed ambient dimensions".into()));
    }
    let m_sum: i64 = shifts.iter().sum();
    if m_sum.rem_euclid(n) != 0 {
        return Err(Error::InvalidTransport(format!(
            "shift sum {} is not divisible by n = {}",
            m_sum, n
        )));
    }
    let moved: Vec<SchubertIndex> =
        classes.iter().zip(shifts).map(|(i, &m)| i.center_act(m)).collect();
    let w_old: i64 = classes.iter().map(|i| i.weight() as i64).sum();
    let w_new: i64 = moved.iter().map(|i| i.weight() as i64).sum();
    debug_assert_eq!((w_old - w_new).rem_euclid(n), 0);
    Ok((moved, d + (w_old - w_new) / n))
}
