//! Exact quantum Schubert calculus for the eigenvalue problem on SU(n).
//!
//! Let A_1, …, A_l be special unitary matrices with A_1 ⋯ A_l = I.  The
//! logarithms of their eigenvalues, taken in the fundamental alcove
//!
//! ```text
//! λ_1 ≥ λ_2 ≥ … ≥ λ_n,   Σ λ_i = 0,   λ_1 − λ_n ≤ 1,
//! ```
//!
//! sweep out a convex polytope Δ_q(l) as the A_k range over all solutions.
//! This crate computes the complete inequality description of that polytope:
//! one inequality
//!
//! ```text
//! Σ_k Σ_{i ∈ I_k} λ_i(A_k)  ≤  d
//! ```
//!
//! for every list (I_1, …, I_l) of r-element index sets whose Gromov–Witten
//! invariant ⟨σ_{I_1}, …, σ_{I_l}⟩_d in the quantum cohomology of the
//! Grassmannian G(r,n) equals a positive number at the degree d forced by
//! the dimension count.  The additive analogue (Hermitian matrices with
//! A_1 + … + A_l = 0) uses classical intersection numbers and yields the
//! cone Δ(l).
//!
//! The crate is split into exact and floating-point halves:
//!
//! * [`partition`], [`schubert`], [`alcove`] — combinatorial ground types;
//! * [`lr`] — Littlewood–Richardson coefficients and the classical cup
//!   product on H*(G(r,n));
//! * [`quantum`] — rim-hook reduction, the quantum product, Gromov–Witten
//!   invariants, and the hidden Z/n symmetry of the structure constants;
//! * [`polytope`] — inequality system generation and exact membership;
//! * [`lp`] — a dense exact-rational simplex used to certify redundancy;
//! * [`fusion`] — SU(n) fusion coefficients at a level and the U(r)
//!   Verlinde algebra, plus the fusion-support membership route;
//! * [`verify`] — Haar sampling, eigenphase extraction, Monte-Carlo
//!   necessity sweeps, and a Riemannian gradient realizer for sufficiency
//!   spot checks.
//!
//! Everything on the exact side is deterministic and uses arbitrary
//! precision (`BigInt` coefficients, `BigRational` coordinates); the
//! floating-point side is deterministic given a seed, independent of
//! worker count.

pub mod alcove;
pub mod error;
pub mod fusion;
pub mod lp;
pub mod lr;
pub mod partition;
pub mod polytope;
pub mod quantum;
pub mod schubert;
pub mod serial;
pub mod verify;

pub use alcove::{AlcovePoint, Rat};
pub use error::{Error, Result};
pub use lr::{CohomologyClass, LrCache};
pub use partition::Partition;
pub use polytope::{EigenTuple, Inequality, InequalitySystem, MembershipReport, SystemKind};
pub use quantum::QuantumClass;
pub use schubert::{GrassCtx, SchubertIndex};
