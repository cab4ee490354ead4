//! Littlewood–Richardson coefficients and the classical cohomology ring.
//!
//! The coefficient c^ν_{λμ} counts skew semistandard tableaux of shape
//! ν/λ and content μ whose reverse reading word (right to left along each
//! row, rows top to bottom) is a lattice word — at every prefix, each
//! value v ≥ 2 has appeared at most as often as v−1.  They are the
//! structure constants of the cup product on H*(G(r,n)):
//!
//! ```text
//! σ_λ · σ_μ = Σ_ν c^ν_{λμ} σ_ν      (ν inside the r × (n−r) box),
//! ```
//!
//! where classes whose partition leaves the box are zero.  The same
//! expansion without the column bound (kept for all ν with at most r
//! rows) is the input to rim-hook reduction in the quantum ring, and with
//! the row bound n it is the classical half of the fusion product, so the
//! expander takes both bounds as parameters and memoizes on them.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::schubert::{GrassCtx, SchubertIndex};

/// One product expansion, shared immutably: the (ν, coefficient) terms
/// of s_λ · s_μ in the order the backtracker emits them.
pub type LrExpansion = Arc<Vec<(Partition, BigInt)>>;

/// All terms of s_λ · s_μ restricted to partitions with at most
/// `max_rows` rows and (when given) first part at most `max_cols`.
/// Every returned coefficient is positive.
pub fn expand_product(
    lam: &Partition,
    mu: &Partition,
    max_rows: u32,
    max_cols: Option<u32>,
    cache: Option<&LrCache>,
) -> LrExpansion {
    if let Some(c) = cache {
        return c.expand(lam, mu, max_rows, max_cols);
    }
    Arc::new(expand_uncached(lam, mu, max_rows, max_cols))
}

fn expand_uncached(
    lam: &Partition,
    mu: &Partition,
    max_rows: u32,
    max_cols: Option<u32>,
) -> Vec<(Partition, BigInt)> {
    // c^ν_{λμ} = c^ν_{μλ}; fewer tableaux get enumerated when the inner
    // shape is the larger partition.
    let (inner, content) = if lam.size() >= mu.size() { (lam, mu) } else { (mu, lam) };
    let mut out = Vec::new();
    for nu in candidate_shapes(inner, content, max_rows, max_cols) {
        let c = lr_count(inner, content, &nu);
        if !c.is_zero() {
            out.push((nu, c));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// The Littlewood–Richardson coefficient c^ν_{λμ}.
pub fn lr_coefficient(lam: &Partition, mu: &Partition, nu: &Partition) -> BigInt {
    if nu.size() != lam.size() + mu.size() || !nu.contains(lam) {
        return BigInt::zero();
    }
    lr_count(lam, mu, nu)
}

/// Candidate outer shapes ν ⊇ λ with |ν| = |λ| + |μ|, at most `max_rows`
/// rows, ν_1 ≤ λ_1 + μ_1 (the top skew row is forced to all 1s, so it has
/// at most μ_1 cells), and ν_i − λ_i ≤ |μ|.
fn candidate_shapes(
    lam: &Partition,
    mu: &Partition,
    max_rows: u32,
    max_cols: Option<u32>,
) -> Vec<Partition> {
    // `target` counts the skew cells ν/λ still to be placed.
    let target = mu.size();
    if (lam.len() as u32) > max_rows {
        return Vec::new();
    }
    let mut first_cap = lam.part(0) + mu.part(0);
    if let Some(c) = max_cols {
        first_cap = first_cap.min(c);
    }
    let mut out = Vec::new();
    let mut rows: Vec<u32> = Vec::new();
    build_shapes(lam, target, max_rows, first_cap, 0, &mut rows, &mut out);
    out
}

fn build_shapes(
    lam: &Partition,
    target: u64,
    max_rows: u32,
    cap: u32,
    size_so_far: u64,
    rows: &mut Vec<u32>,
    out: &mut Vec<Partition>,
) {
    let i = rows.len() as u32;
    let deficit = target - size_so_far;
    if i >= max_rows || cap == 0 {
        if deficit == 0 && lam.len() <= rows.len() {
            out.push(Partition::from_raw(rows.iter().copied().filter(|&p| p > 0).collect()));
        }
        return;
    }
    // Row i may also close the shape early if λ is already covered.
    let lo = lam.part(i as usize);
    if deficit == 0 && lo == 0 {
        out.push(Partition::from_raw(rows.iter().copied().filter(|&p| p > 0).collect()));
        return;
    }
    let hi = cap.min(deficit.min(u32::MAX as u64) as u32 + lo);
    for v in lo..=hi {
        // Remaining rows cannot cover the rest if even `v` per row is short.
        let rest = deficit - (v - lo) as u64;
        let rows_left = (max_rows - i - 1) as u64;
        if rest > rows_left * v as u64 {
            continue;
        }
        rows.push(v);
        build_shapes(lam, target, max_rows, v, size_so_far + (v - lo) as u64, rows, out);
        rows.pop();
    }
}

/// Counts lattice fillings of ν/λ with content μ by backtracking over the
/// cells in reverse reading order.
fn lr_count(lam: &Partition, mu: &Partition, nu: &Partition) -> BigInt {
    debug_assert!(nu.contains(lam));
    debug_assert_eq!(nu.size(), lam.size() + mu.size());
    if mu.is_empty() {
        return BigInt::one();
    }
    // Cell list in reverse reading order, with the row of each cell.
    let mut cells: Vec<(usize, usize)> = Vec::with_capacity(mu.size() as usize);
    for row in 0..nu.len() {
        let lo = lam.part(row) as usize;
        let hi = nu.part(row) as usize;
        for col in (lo..hi).rev() {
            cells.push((row, col));
        }
    }
    let values = mu.len();
    let mut grid: Vec<Vec<u32>> = (0..nu.len()).map(|row| vec![0; nu.part(row) as usize]).collect();
    let mut counts = vec![0u32; values + 1];
    let mut total = BigInt::zero();
    fill(&cells, 0, lam, mu, &mut grid, &mut counts, &mut total);
    total
}

fn fill(
    cells: &[(usize, usize)],
    k: usize,
    lam: &Partition,
    mu: &Partition,
    grid: &mut Vec<Vec<u32>>,
    counts: &mut Vec<u32>,
    total: &mut BigInt,
) {
    if k == cells.len() {
        *total += 1;
        return;
    }
    let (row, col) = cells[k];
    // Weakly increasing along the row: bounded by the right neighbor,
    // which is filled already (reverse reading order).
    let row_cap = if col + 1 < grid[row].len() { grid[row][col + 1] } else { mu.len() as u32 };
    // Strictly increasing down the column: the cell above is filled
    // already; cells still inside λ impose nothing.
    let col_floor =
        if row > 0 && col >= lam.part(row - 1) as usize { grid[row - 1][col] + 1 } else { 1 };
    for v in col_floor..=row_cap {
        let vi = v as usize;
        if counts[vi] >= mu.part(vi - 1) {
            continue; // content exhausted
        }
        if v >= 2 && counts[vi] + 1 > counts[vi - 1] {
            continue; // lattice word violated
        }
        counts[vi] += 1;
        grid[row][col] = v;
        fill(cells, k + 1, lam, mu, grid, counts, total);
        grid[row][col] = 0;
        counts[vi] -= 1;
    }
}

/// Memo key: the two factors plus the row/column bounds of the query.
type LrKey = (Partition, Partition, u32, Option<u32>);

/// Thread-safe memo for [`expand_product`].  Semantically transparent:
/// hits return exactly what the uncached expansion would.
#[derive(Default)]
pub struct LrCache {
    map: Mutex<HashMap<LrKey, LrExpansion>>,
}

impl LrCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn expand(
        &self,
        lam: &Partition,
        mu: &Partition,
        max_rows: u32,
        max_cols: Option<u32>,
    ) -> LrExpansion {
        // Commutative product: canonicalize the key order.
        let (a, b) = if lam <= mu { (lam, mu) } else { (mu, lam) };
        let key = (a.clone(), b.clone(), max_rows, max_cols);
        if let Some(hit) = self.map.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let val = Arc::new(expand_uncached(a, b, max_rows, max_cols));
        self.map.lock().unwrap().entry(key).or_insert(val).clone()
    }

    pub fn len(&self) -> usize {
        self.map.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A finite Z-linear combination of Schubert basis classes of one
/// Grassmannian.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CohomologyClass {
    ctx: GrassCtx,
    terms: BTreeMap<Partition, BigInt>,
}

impl CohomologyClass {
    pub fn zero(ctx: GrassCtx) -> Self {
        CohomologyClass { ctx, terms: BTreeMap::new() }
    }

    /// The unit class σ_∅.
    pub fn unit(ctx: GrassCtx) -> Self {
        let mut c = Self::zero(ctx);
        c.add_term(Partition::empty(), BigInt::one());
        c
    }

    pub fn basis(ctx: GrassCtx, lam: Partition) -> Result<Self> {
        if !ctx.fits(&lam) {
            return Err(Error::InvalidPartition(format!(
                "{} does not fit the {}x{} box",
                lam,
                ctx.r(),
                ctx.cols()
            )));
        }
        let mut c = Self::zero(ctx);
        c.add_term(lam, BigInt::one());
        Ok(c)
    }

    pub fn ctx(&self) -> GrassCtx {
        self.ctx
    }

    pub fn terms(&self) -> &BTreeMap<Partition, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, lam: &Partition) -> BigInt {
        self.terms.get(lam).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, lam: Partition, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        debug_assert!(self.ctx.fits(&lam));
        use std::collections::btree_map::Entry;
        match self.terms.entry(lam) {
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
}

/// Cup product on H*(G(r,n)); classes outside the box are dropped.
pub fn classical_product(
    a: &CohomologyClass,
    b: &CohomologyClass,
    cache: Option<&LrCache>,
) -> Result<CohomologyClass> {
    if a.ctx != b.ctx {
        return Err(Error::ContextMismatch(
            "cup product of classes on different Grassmannians".into(),
        ));
    }
    let ctx = a.ctx;
    let mut out = CohomologyClass::zero(ctx);
    for (lam, ca) in &a.terms {
        for (mu, cb) in &b.terms {
            let expansion = expand_product(lam, mu, ctx.r(), Some(ctx.cols()), cache);
            for (nu, c) in expansion.iter() {
                out.add_term(nu.clone(), c * ca * cb);
            }
        }
    }
    Ok(out)
}

/// The classical intersection number ⟨σ_{I_1} ⋯ σ_{I_k}⟩: the coefficient
/// of the point class in the cup product of all the classes.  Zero unless
/// the codimensions add up to r(n−r).
pub fn intersection_number(
    classes: &[SchubertIndex],
    ctx: GrassCtx,
    cache: Option<&LrCache>,
) -> Result<BigInt> {
    let total: u64 = classes.iter().map(|i| i.codim()).sum();
    if total != ctx.dim() {
        return Ok(BigInt::zero());
    }
    let mut acc = CohomologyClass::unit(ctx);
    for idx in classes {
        let lam = idx.to_partition(ctx)?;
        let b = CohomologyClass::basis(ctx, lam)?;
        acc = classical_product(&acc, &b, cache)?;
        if acc.is_zero() {
            return Ok(BigInt::zero());
        }
    }
    Ok(acc.coefficient(&ctx.point_class()))
}
