//! Crate-wide error type.
//!
//! Variants are grouped by contract: `Invalid*` mean the caller handed in
//! data that violates a documented type invariant (the message names the
//! invariant that failed), `Numeric` means a floating-point routine was fed
//! a matrix outside its tolerance, and `Internal` flags a broken internal
//! invariant — reaching it is a bug, never a data problem.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid Schubert index: {0}")]
    InvalidIndex(String),

    #[error("invalid Grassmannian context: need 1 <= r < n, got r={r}, n={n}")]
    InvalidContext { r: u32, n: u32 },

    #[error("invalid alcove point: {0}")]
    InvalidAlcove(String),

    #[error("invalid eigenvalue tuple: {0}")]
    InvalidTuple(String),

    #[error("invalid inequality system: {0}")]
    InvalidSystem(String),

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("context mismatch: {0}")]
    ContextMismatch(String),

    #[error("invalid symmetry transport: {0}")]
    InvalidTransport(String),

    #[error("numeric input rejected: {0}")]
    Numeric(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors that indicate malformed input rather than a bug.
    pub fn is_input(&self) -> bool {
        !matches!(self, Error::Internal(_))
    }
}
