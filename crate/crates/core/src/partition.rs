//! Integer partitions (Young diagrams).
//!
//! A partition is stored as its weakly decreasing list of positive parts;
//! trailing zeros are trimmed on construction, so two representations of
//! the same diagram always compare equal.  The empty partition is the unit
//! class of every Grassmannian.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Builds a partition from a weakly decreasing sequence; trailing zeros
    /// are dropped.  Rejects increasing steps.
    pub fn new<I: IntoIterator<Item = u32>>(parts: I) -> Result<Self> {
        let mut v: Vec<u32> = parts.into_iter().collect();
        if v.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "parts must be weakly decreasing, got {:?}",
                v
            )));
        }
        while v.last() == Some(&0) {
            v.pop();
        }
        Ok(Partition(v))
    }

    /// Construction from data already known to be valid (internal use).
    pub(crate) fn from_raw(v: Vec<u32>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(v.last() != Some(&0));
        Partition(v)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The nonzero parts, largest first.
    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of nonzero parts (rows of the diagram).
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of boxes |λ|.
    pub fn size(&self) -> u64 {
        self.0.iter().map(|&p| p as u64).sum()
    }

    /// The `row`-th part (0-based), zero beyond the last row.
    pub fn part(&self, row: usize) -> u32 {
        self.0.get(row).copied().unwrap_or(0)
    }

    /// Conjugate diagram: λ'_j = #{i : λ_i ≥ j}.
    pub fn transpose(&self) -> Partition {
        let cols = self.part(0) as usize;
        let mut t = Vec::with_capacity(cols);
        for j in 1..=cols {
            t.push(self.0.iter().filter(|&&p| p as usize >= j).count() as u32);
        }
        Partition::from_raw(t)
    }

    /// Diagram inclusion: every row of `inner` fits inside this diagram.
    pub fn contains(&self, inner: &Partition) -> bool {
        inner.0.iter().enumerate().all(|(i, &p)| self.part(i) >= p)
    }

    /// Whether the diagram fits in a `rows` × `cols` box.
    pub fn fits(&self, rows: u32, cols: u32) -> bool {
        self.len() as u32 <= rows && self.part(0) <= cols
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{}", self)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, ")")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u32>::deserialize(d)?;
        Partition::new(v).map_err(serde::de::Error::custom)
    }
}

/// All partitions fitting in a `rows` × `cols` box, in lexicographic order.
pub fn partitions_in_box(rows: u32, cols: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<u32>> = vec![Vec::new()];
    while let Some(cur) = stack.pop() {
        out.push(Partition::from_raw(cur.iter().copied().filter(|&p| p > 0).collect()));
        if (cur.len() as u32) < rows {
            let cap = cur.last().copied().unwrap_or(cols);
            // Push in reverse so the pop order is lexicographic.
            for next in (1..=cap).rev() {
                let mut ext = cur.clone();
                ext.push(next);
                stack.push(ext);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}
