//! Schubert indices on a Grassmannian and the transforms acting on them.
//!
//! A Schubert class on G(r,n) — the Grassmannian of r-planes in C^n — can
//! be indexed either by an r-element subset I = {i_1 < … < i_r} of
//! {1, …, n} or by a partition λ inside the r × (n−r) box.  The two are
//! linked by
//!
//! ```text
//! λ_j = n − r + j − i_j,        i_j = n − r + j − λ_j,
//! ```
//!
//! so the full set {n−r+1, …, n} is the unit class ∅ and {1, …, r} is the
//! point class ((n−r)^r).  Three involutions/recodings recur everywhere:
//!
//! * the Poincaré dual subset *I = {n+1−i : i ∈ I};
//! * the complement I^c = {1,…,n} \ *I, an index on G(n−r, n) whose
//!   partition is the transpose of λ(I);
//! * the center action c^m·I = {i − m mod n}, the combinatorial shadow of
//!   tensoring by a central element of SU(n).

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::partition::{partitions_in_box, Partition};

/// The ambient Grassmannian G(r,n): r-planes in C^n, 1 ≤ r < n.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct GrassCtx {
    r: u32,
    n: u32,
}

impl GrassCtx {
    pub fn new(r: u32, n: u32) -> Result<Self> {
        if r == 0 || r >= n {
            return Err(Error::InvalidContext { r, n });
        }
        Ok(GrassCtx { r, n })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Width of the Schubert box, n − r.
    pub fn cols(&self) -> u32 {
        self.n - self.r
    }

    /// Complex dimension r(n−r), the codimension of the point class.
    pub fn dim(&self) -> u64 {
        self.r as u64 * (self.n - self.r) as u64
    }

    /// The dual Grassmannian G(n−r, n).
    pub fn transpose(&self) -> GrassCtx {
        GrassCtx { r: self.n - self.r, n: self.n }
    }

    /// Whether λ fits in the r × (n−r) box, i.e. indexes a class here.
    pub fn fits(&self, lambda: &Partition) -> bool {
        lambda.fits(self.r, self.cols())
    }

    /// The point class ((n−r)^r).
    pub fn point_class(&self) -> Partition {
        Partition::from_raw(vec![self.cols(); self.r as usize])
    }

    /// All basis partitions, lexicographically sorted.
    pub fn partitions(&self) -> Vec<Partition> {
        partitions_in_box(self.r, self.cols())
    }

    /// All r-subsets of {1,…,n}, lexicographically sorted.
    pub fn subsets(&self) -> Vec<SchubertIndex> {
        (1..=self.n)
            .combinations(self.r as usize)
            .map(|elems| SchubertIndex { n: self.n, elems })
            .collect()
    }
}

/// A sorted r-element subset of {1,…,n} indexing a Schubert class, with
/// 1 ≤ r ≤ n−1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SchubertIndex {
    n: u32,
    elems: Vec<u32>,
}

impl SchubertIndex {
    pub fn new<I: IntoIterator<Item = u32>>(n: u32, elems: I) -> Result<Self> {
        let elems: Vec<u32> = elems.into_iter().collect();
        if elems.is_empty() || elems.len() >= n as usize {
            return Err(Error::InvalidIndex(format!(
                "cardinality must satisfy 1 <= r <= n-1, got r={} with n={}",
                elems.len(),
                n
            )));
        }
        if elems.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidIndex(format!(
                "elements must be strictly increasing, got {:?}",
                elems
            )));
        }
        if elems[0] < 1 || *elems.last().unwrap() > n {
            return Err(Error::InvalidIndex(format!(
                "elements must lie in 1..={}, got {:?}",
                n, elems
            )));
        }
        Ok(SchubertIndex { n, elems })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn rank(&self) -> u32 {
        self.elems.len() as u32
    }

    pub fn elems(&self) -> &[u32] {
        &self.elems
    }

    /// Sum of the elements; the quantity that tracks quantum degree under
    /// the center action.
    pub fn weight(&self) -> u64 {
        self.elems.iter().map(|&i| i as u64).sum()
    }

    /// The Poincaré dual index *I = {n+1−i : i ∈ I}.
    pub fn dual(&self) -> SchubertIndex {
        let elems = self.elems.iter().rev().map(|&i| self.n + 1 - i).collect();
        SchubertIndex { n: self.n, elems }
    }

    /// The complementary index {1,…,n} \ *I, of rank n−r.  Its partition
    /// on the dual Grassmannian is the transpose of this index's partition.
    pub fn complement(&self) -> SchubertIndex {
        let dual = self.dual();
        let elems = (1..=self.n).filter(|i| !dual.elems.contains(i)).collect();
        SchubertIndex { n: self.n, elems }
    }

    /// The center action c^m·I: shifts every element by −m modulo n
    /// (representatives in {1,…,n}) and re-sorts.
    pub fn center_act(&self, m: i64) -> SchubertIndex {
        let n = self.n as i64;
        let mut elems: Vec<u32> =
            self.elems.iter().map(|&i| ((i as i64 - m - 1).rem_euclid(n) + 1) as u32).collect();
        elems.sort_unstable();
        SchubertIndex { n: self.n, elems }
    }

    /// The partition λ_j = n − r + j − i_j on `ctx`; fails when the rank
    /// or ambient n disagree with the context.
    pub fn to_partition(&self, ctx: GrassCtx) -> Result<Partition> {
        if self.n != ctx.n() || self.rank() != ctx.r() {
            return Err(Error::ContextMismatch(format!(
                "index of rank {} in {{1..{}}} against G({},{})",
                self.rank(),
                self.n,
                ctx.r(),
                ctx.n()
            )));
        }
        let base = ctx.cols();
        let parts: Vec<u32> =
            self.elems.iter().enumerate().map(|(j0, &i)| base + (j0 as u32 + 1) - i).collect();
        Ok(Partition::from_raw(parts.into_iter().filter(|&p| p > 0).collect()))
    }

    /// Inverse of [`to_partition`](Self::to_partition).
    pub fn from_partition(ctx: GrassCtx, lambda: &Partition) -> Result<Self> {
        if !ctx.fits(lambda) {
            return Err(Error::InvalidPartition(format!(
                "{} does not fit the {}x{} box",
                lambda,
                ctx.r(),
                ctx.cols()
            )));
        }
        let elems = (1..=ctx.r()).map(|j| ctx.cols() + j - lambda.part(j as usize - 1)).collect();
        Ok(SchubertIndex { n: ctx.n(), elems })
    }

    /// Codimension of the class: |λ(I)| = Σ (n − r + j − i_j).
    pub fn codim(&self) -> u64 {
        let r = self.rank() as u64;
        let n = self.n as u64;
        // Σ_j (n − r + j) − Σ i_j  =  r(n−r) + r(r+1)/2 − w(I)
        r * (n - r) + r * (r + 1) / 2 - self.weight()
    }
}

impl std::fmt::Debug for SchubertIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.elems.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i)?;
        }
        write!(f, "}}⊂[{}]", self.n)
    }
}
