//! Floating-point verification layer.
//!
//! Everything in this module is double-precision and probabilistic; it
//! exists to cross-examine the exact combinatorial output of the rest of
//! the crate, not to replace it.  Three instruments:
//!
//! * **sampling** — draw Haar-random A_1, …, A_{l−1} ∈ SU(n), close the
//!   product with A_l = (A_1⋯A_{l−1})^{−1}, extract the alcove tuple,
//!   and evaluate every inequality (the necessity direction: no sample
//!   may violate).  The additive analogue draws traceless Hermitian
//!   matrices summing to zero.
//! * **eigenphase extraction** — the map sending A to the sorted vector
//!   of eigenphases (θ_1 ≥ … ≥ θ_n, Σθ = 0, θ_1 − θ_n ≤ 1) that labels
//!   its conjugacy class.
//! * **realization** — a local search for matrices witnessing a tuple:
//!   minimize ‖A_1⋯A_l − I‖²_F over conjugators Q_k of the fixed
//!   diagonals, by Riemannian gradient descent on U(n)^l with
//!   QR retraction and random restarts.  Success certifies membership;
//!   failure certifies nothing (the optimizer is local).

use nalgebra::{Complex, DMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::alcove::{AlcovePoint, Rat};
use crate::error::{Error, Result};
use crate::polytope::{EigenTuple, InequalitySystem, SystemKind};
use crate::serial::{self, SCHEMA_VERSION};

type C = Complex<f64>;

const UNITARITY_TOL: f64 = 1e-10;

/// An n×n matrix validated to be unitary (‖U*U − I‖_F ≤ 1e−10).
#[derive(Clone, Debug)]
pub struct UnitaryMatrix {
    m: DMatrix<C>,
}

impl UnitaryMatrix {
    pub fn new(m: DMatrix<C>) -> Result<Self> {
        if m.nrows() != m.ncols() || m.nrows() < 2 {
            return Err(Error::Numeric(format!(
                "expected a square matrix of size ≥ 2, got {}×{}",
                m.nrows(),
                m.ncols()
            )));
        }
        let n = m.nrows();
        let gram = m.adjoint() * &m - DMatrix::<C>::identity(n, n);
        let defect = gram.norm();
        if defect > UNITARITY_TOL {
            return Err(Error::Numeric(format!(
                "matrix is not unitary: ‖U*U − I‖ = {:.3e}",
                defect
            )));
        }
        Ok(UnitaryMatrix { m })
    }

    pub fn identity(n: u32) -> Self {
        UnitaryMatrix { m: DMatrix::identity(n as usize, n as usize) }
    }

    pub fn n(&self) -> u32 {
        self.m.nrows() as u32
    }

    pub fn matrix(&self) -> &DMatrix<C> {
        &self.m
    }

    pub fn multiply(&self, other: &UnitaryMatrix) -> Result<UnitaryMatrix> {
        if self.n() != other.n() {
            return Err(Error::Numeric("size mismatch in product".into()));
        }
        UnitaryMatrix::new(&self.m * &other.m)
    }

    /// The inverse, computed as the adjoint.
    pub fn inverse(&self) -> UnitaryMatrix {
        UnitaryMatrix { m: self.m.adjoint() }
    }

    pub fn determinant(&self) -> C {
        self.m.clone().lu().determinant()
    }

    pub fn is_special(&self, tol: f64) -> bool {
        (self.determinant() - C::new(1.0, 0.0)).norm() <= tol
    }
}

impl Serialize for UnitaryMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("UnitaryMatrix", 3)?;
        st.serialize_field("schema", &SCHEMA_VERSION)?;
        st.serialize_field("n", &self.n())?;
        let entries: Vec<[f64; 2]> = (0..self.m.nrows())
            .flat_map(|i| (0..self.m.ncols()).map(move |j| (i, j)))
            .map(|(i, j)| {
                let z = self.m[(i, j)];
                [z.re, z.im]
            })
            .collect();
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for UnitaryMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            schema: u32,
            n: u32,
            entries: Vec<[f64; 2]>,
        }
        let repr = Repr::deserialize(d)?;
        serial::check_schema(repr.schema, "unitary matrix").map_err(serde::de::Error::custom)?;
        let n = repr.n as usize;
        if repr.entries.len() != n * n {
            return Err(serde::de::Error::custom(format!(
                "expected {} entries for a {0}×{0} matrix, got {}",
                n,
                repr.entries.len()
            )));
        }
        let m = DMatrix::from_fn(n, n, |i, j| {
            let [re, im] = repr.entries[i * n + j];
            C::new(re, im)
        });
        UnitaryMatrix::new(m).map_err(serde::de::Error::custom)
    }
}

/// Deterministic per-trial seed derivation (splitmix64 finalizer).
fn mix_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn ginibre(n: usize, rng: &mut impl Rng) -> DMatrix<C> {
    DMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    })
}

/// QR orthonormalization with the R-diagonal phase fixed so that the
/// factorization is unique; applied to a Gaussian matrix this samples
/// the Haar measure on U(n).
fn qr_unitary(m: DMatrix<C>) -> DMatrix<C> {
    let n = m.nrows();
    let (mut q, r) = m.qr().unpack();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 1e-300 { d / d.norm() } else { C::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// A Haar-distributed element of U(n).
pub fn haar_unitary(n: u32, rng: &mut impl Rng) -> UnitaryMatrix {
    UnitaryMatrix { m: qr_unitary(ginibre(n as usize, rng)) }
}

/// A Haar-distributed element of SU(n): a Haar unitary with the
/// determinant phase divided out by a scalar n-th root.
pub fn haar_special_unitary(n: u32, rng: &mut impl Rng) -> UnitaryMatrix {
    let mut m = qr_unitary(ginibre(n as usize, rng));
    let det = m.clone().lu().determinant();
    let correction = C::from_polar(1.0, -det.arg() / n as f64);
    m *= correction;
    UnitaryMatrix { m }
}

fn eigenphases(m: &DMatrix<C>) -> Result<Vec<f64>> {
    let schur = m
        .clone()
        .try_schur(1e-13, 100_000)
        .ok_or_else(|| Error::Numeric("Schur iteration failed to converge".into()))?;
    let (_, t) = schur.unpack();
    Ok((0..m.nrows()).map(|i| t[(i, i)].arg()).collect())
}

/// Sorted alcove coordinates of a special unitary matrix: eigenphases
/// θ_k ∈ [0,1) sorted descending; det = 1 forces Σθ = m ∈ ℤ, and
/// subtracting 1 from the m largest phases (then re-sorting) lands in
/// the fundamental alcove.  Near-degenerate phases are ordered by the
/// stable sort; this affects nothing downstream since every inequality
/// is continuous in the coordinates.
pub fn eigen_alcove(a: &UnitaryMatrix) -> Result<Vec<f64>> {
    let n = a.n() as usize;
    let mut theta: Vec<f64> = eigenphases(&a.m)?
        .into_iter()
        .map(|arg| {
            let mut t = arg / std::f64::consts::TAU;
            if t < 0.0 {
                t += 1.0;
            }
            if t >= 1.0 {
                t -= 1.0;
            }
            t
        })
        .collect();
    theta.sort_by(|x, y| y.partial_cmp(x).unwrap());
    let sum: f64 = theta.iter().sum();
    let m = sum.round();
    if (sum - m).abs() > 1e-6 {
        return Err(Error::Numeric(format!(
            "phase sum {:.3e} is not near an integer; determinant is not 1",
            sum
        )));
    }
    let m = (m.max(0.0) as usize).min(n);
    for t in theta.iter_mut().take(m) {
        *t -= 1.0;
    }
    theta.sort_by(|x, y| y.partial_cmp(x).unwrap());
    Ok(theta)
}

/// Best rational approximation of `x` among continued-fraction
/// convergents with denominator ≤ `max_denom`.
fn approx_rat(x: f64, max_denom: u64) -> Rat {
    use num_bigint::BigInt;
    let negative = x < 0.0;
    let mut frac = x.abs();
    let (mut p0, mut q0) = (num_bigint::BigInt::from(1u8), BigInt::from(0u8));
    let a0 = frac.floor();
    let (mut p1, mut q1) = (BigInt::from(a0 as u64), BigInt::from(1u8));
    frac -= a0;
    for _ in 0..64 {
        if frac < 1e-15 {
            break;
        }
        frac = 1.0 / frac;
        let a = frac.floor();
        frac -= a;
        let a = BigInt::from(a as u64);
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        if q2 > BigInt::from(max_denom) {
            break;
        }
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
    }
    let val = Rat::new(p1, q1);
    if negative {
        -val
    } else {
        val
    }
}

/// Snaps floating alcove coordinates to exact rationals: the first n−1
/// coordinates are approximated with denominators ≤ `max_denom` and the
/// last is set to minus their sum, so the trace constraint holds
/// exactly.  Fails if snapping breaks the ordering or spread invariants
/// (possible for points too close to a wall for the requested
/// precision).
pub fn rationalize_alcove(coords: &[f64], max_denom: u64) -> Result<AlcovePoint> {
    if coords.len() < 2 {
        return Err(Error::InvalidAlcove("need at least 2 coordinates".into()));
    }
    let mut rats: Vec<Rat> =
        coords[..coords.len() - 1].iter().map(|&x| approx_rat(x, max_denom)).collect();
    let last = -rats.iter().sum::<Rat>();
    rats.push(last);
    AlcovePoint::new(rats)
}

/// Q · diag(e^{2πiξ_k}) · Q* with Q Haar-distributed: a uniform point of
/// the conjugacy class labelled by ξ.
pub fn sample_conjugacy_class(xi: &AlcovePoint, rng: &mut impl Rng) -> UnitaryMatrix {
    let n = xi.n() as usize;
    let coords = xi.to_f64();
    let q = qr_unitary(ginibre(n, rng));
    let d = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        n,
        coords.iter().map(|&t| C::from_polar(1.0, std::f64::consts::TAU * t)),
    ));
    let m = &q * d * q.adjoint();
    UnitaryMatrix { m }
}

/// One recorded tolerance breach from a sampling run.
#[derive(Clone, Debug, Serialize)]
pub struct SampleViolation {
    /// Trial index within the run.
    pub trial: u64,
    /// The derived per-trial seed, for standalone reproduction.
    pub seed: u64,
    /// Index into the system's inequality list.
    pub inequality_index: usize,
    /// Amount by which the left side exceeded the bound.
    pub excess: f64,
}

/// Outcome of a sampling sweep: which (trial, inequality) pairs exceeded
/// the tolerance, and the largest excess seen anywhere (≤ 0 means every
/// inequality held on every sample, with room to spare).
#[derive(Clone, Debug, Serialize)]
pub struct SampleReport {
    pub schema: u32,
    pub trials: u64,
    pub tolerance: f64,
    pub violations: Vec<SampleViolation>,
    pub max_violation: f64,
}

fn sweep<F>(sys: &InequalitySystem, trials: u64, seed: u64, tol: f64, draw: F) -> SampleReport
where
    F: Fn(&mut ChaCha8Rng) -> Vec<Vec<f64>> + Sync,
{
    let per_trial: Vec<(Vec<SampleViolation>, f64)> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let trial_seed = mix_seed(seed, trial);
            let mut rng = ChaCha8Rng::seed_from_u64(trial_seed);
            let points = draw(&mut rng);
            let mut worst = f64::NEG_INFINITY;
            let mut violations = Vec::new();
            for (idx, ineq) in sys.inequalities.iter().enumerate() {
                let excess = ineq.excess_f64(&points);
                worst = worst.max(excess);
                if excess > tol {
                    violations.push(SampleViolation {
                        trial,
                        seed: trial_seed,
                        inequality_index: idx,
                        excess,
                    });
                }
            }
            (violations, worst)
        })
        .collect();
    let mut violations = Vec::new();
    let mut max_violation = f64::NEG_INFINITY;
    for (v, worst) in per_trial {
        violations.extend(v);
        max_violation = max_violation.max(worst);
    }
    if !max_violation.is_finite() {
        max_violation = 0.0;
    }
    SampleReport { schema: SCHEMA_VERSION, trials, tolerance: tol, violations, max_violation }
}

/// Draws A_1, …, A_{l−1} Haar on SU(n), closes with
/// A_l = (A_1⋯A_{l−1})^{−1}, and evaluates every inequality of the
/// system on the resulting alcove tuple.  Such tuples lie in the product
/// polytope by construction, so any violation beyond the tolerance
/// indicts the system (or the arithmetic), not the sample.
pub fn verify_products(
    sys: &InequalitySystem,
    trials: u64,
    seed: u64,
    tol: f64,
) -> Result<SampleReport> {
    if sys.kind != SystemKind::Multiplicative {
        return Err(Error::InvalidSystem("product sampling needs a multiplicative system".into()));
    }
    let n = sys.n;
    let l = sys.l as usize;
    Ok(sweep(sys, trials, seed, tol, move |rng| {
        let mut matrices: Vec<UnitaryMatrix> =
            (1..l).map(|_| haar_special_unitary(n, rng)).collect();
        let mut prod = DMatrix::<C>::identity(n as usize, n as usize);
        for a in &matrices {
            prod *= a.matrix();
        }
        matrices.push(UnitaryMatrix { m: prod.adjoint() });
        matrices
            .iter()
            .map(|a| eigen_alcove(a).expect("sampled matrix has unit determinant"))
            .collect()
    }))
}

fn random_traceless_hermitian(n: usize, rng: &mut impl Rng) -> DMatrix<C> {
    let g = ginibre(n, rng);
    let mut h = (&g + g.adjoint()) * C::new(0.5, 0.0);
    let shift = h.trace() / C::new(n as f64, 0.0);
    for i in 0..n {
        h[(i, i)] -= shift;
    }
    h
}

fn sorted_eigenvalues(h: &DMatrix<C>) -> Vec<f64> {
    let mut ev: Vec<f64> = h.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|x, y| y.partial_cmp(x).unwrap());
    ev
}

/// Additive analogue of [`verify_products`]: draws traceless Hermitian
/// H_1, …, H_{l−1} with Gaussian entries, sets H_l = −ΣH_k, and checks
/// the system on the sorted spectra.
pub fn verify_sums(
    sys: &InequalitySystem,
    trials: u64,
    seed: u64,
    tol: f64,
) -> Result<SampleReport> {
    if sys.kind != SystemKind::Additive {
        return Err(Error::InvalidSystem("sum sampling needs an additive system".into()));
    }
    let n = sys.n as usize;
    let l = sys.l as usize;
    Ok(sweep(sys, trials, seed, tol, move |rng| {
        let heads: Vec<DMatrix<C>> = (1..l).map(|_| random_traceless_hermitian(n, rng)).collect();
        let mut last = DMatrix::<C>::zeros(n, n);
        for h in &heads {
            last -= h;
        }
        let mut spectra: Vec<Vec<f64>> = heads.iter().map(sorted_eigenvalues).collect();
        spectra.push(sorted_eigenvalues(&last));
        spectra
    }))
}

/// Tuning knobs for [`realize`].
#[derive(Clone, Copy, Debug)]
pub struct RealizeOptions {
    /// Success threshold on the residual ‖A_1⋯A_l − I‖_F.
    pub tol: f64,
    /// Gradient steps per restart.
    pub max_iter: u32,
    /// Number of random restarts after the deterministic start.
    pub restarts: u32,
    pub seed: u64,
}

impl Default for RealizeOptions {
    fn default() -> Self {
        RealizeOptions { tol: 1e-6, max_iter: 4000, restarts: 8, seed: 0 }
    }
}

/// A witness produced by [`realize`]: matrices A_k in the prescribed
/// conjugacy classes whose product is within `residual` of the identity.
#[derive(Clone, Debug, Serialize)]
pub struct Realization {
    pub matrices: Vec<UnitaryMatrix>,
    pub residual: f64,
}

/// Result of the realization search.  `Failed` is *not* a certificate of
/// non-membership; it only reports the best residual the local search
/// reached.
#[derive(Clone, Debug)]
pub enum RealizeOutcome {
    Realized(Realization),
    Failed { best_residual: f64 },
}

impl RealizeOutcome {
    pub fn is_realized(&self) -> bool {
        matches!(self, RealizeOutcome::Realized(_))
    }

    pub fn residual(&self) -> f64 {
        match self {
            RealizeOutcome::Realized(r) => r.residual,
            RealizeOutcome::Failed { best_residual } => *best_residual,
        }
    }
}

fn herm_part(x: &DMatrix<C>) -> DMatrix<C> {
    (x + x.adjoint()) * C::new(0.5, 0.0)
}

struct RealizeState {
    ds: Vec<DMatrix<C>>,
    n: usize,
}

impl RealizeState {
    fn objective(&self, qs: &[DMatrix<C>]) -> f64 {
        let mut p = DMatrix::<C>::identity(self.n, self.n);
        for (q, d) in qs.iter().zip(&self.ds) {
            p *= q * d * q.adjoint();
        }
        (p - DMatrix::<C>::identity(self.n, self.n)).norm_squared()
    }

    /// Riemannian gradient of the objective at `qs`, one tangent matrix
    /// per factor, plus the squared gradient norm.
    fn gradient(&self, qs: &[DMatrix<C>]) -> (Vec<DMatrix<C>>, f64) {
        let l = qs.len();
        let id = DMatrix::<C>::identity(self.n, self.n);
        let a: Vec<DMatrix<C>> =
            qs.iter().zip(&self.ds).map(|(q, d)| q * d * q.adjoint()).collect();
        // prefix[k] = A_1⋯A_{k−1}, suffix[k] = A_{k+1}⋯A_l.
        let mut prefix = vec![id.clone()];
        for ak in &a {
            let next = prefix.last().unwrap() * ak;
            prefix.push(next);
        }
        let mut suffix = vec![id.clone(); l + 1];
        for k in (0..l).rev() {
            suffix[k] = &a[k] * &suffix[k + 1];
        }
        let e = &prefix[l] - &id;
        let mut grads = Vec::with_capacity(l);
        let mut norm2 = 0.0;
        for k in 0..l {
            let lmat = &prefix[k];
            let rmat = &suffix[k + 1];
            let q = &qs[k];
            let d = &self.ds[k];
            // Euclidean gradient of ‖L·QDQ*·R − I‖² with respect to Q.
            let g = lmat.adjoint() * &e * rmat.adjoint() * q * d.adjoint()
                + rmat * e.adjoint() * lmat * q * d;
            let xi = &g - q * herm_part(&(q.adjoint() * &g));
            norm2 += xi.norm_squared();
            grads.push(xi);
        }
        (grads, norm2)
    }

    /// Gradient descent with Armijo backtracking from the given start;
    /// returns the best objective value reached (mutating `qs`).
    fn descend(&self, qs: &mut Vec<DMatrix<C>>, max_iter: u32, target: f64) -> f64 {
        let mut f = self.objective(qs);
        let mut step = 0.25;
        for _ in 0..max_iter {
            if f <= target {
                break;
            }
            let (grads, gnorm2) = self.gradient(qs);
            if gnorm2 < 1e-26 {
                break;
            }
            let slope = -2.0 * gnorm2;
            let mut accepted = false;
            while step > 1e-16 {
                let candidate: Vec<DMatrix<C>> = qs
                    .iter()
                    .zip(&grads)
                    .map(|(q, xi)| qr_unitary(q - xi * C::new(step, 0.0)))
                    .collect();
                let fc = self.objective(&candidate);
                if fc <= f + 0.1 * step * slope {
                    *qs = candidate;
                    f = fc;
                    step = (step * 1.8).min(1.0);
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if !accepted {
                break;
            }
        }
        f
    }
}

/// Searches for special unitary matrices A_k with prescribed alcove
/// labels ξ_k and A_1⋯A_l ≈ I, by minimizing ‖A_1⋯A_l − I‖²_F over the
/// conjugating unitaries (the diagonals are fixed, so every iterate is
/// exactly in its class; the extra gauge freedom is harmless).  The
/// first start is Q_k = I, followed by Haar-random restarts.
pub fn realize(tuple: &EigenTuple, opts: &RealizeOptions) -> Result<RealizeOutcome> {
    if tuple.kind() != SystemKind::Multiplicative {
        return Err(Error::InvalidTuple("realization applies to alcove tuples".into()));
    }
    let n = tuple.n() as usize;
    let l = tuple.l() as usize;
    let ds: Vec<DMatrix<C>> = tuple
        .to_f64()
        .iter()
        .map(|coords| {
            DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
                n,
                coords.iter().map(|&t| C::from_polar(1.0, std::f64::consts::TAU * t)),
            ))
        })
        .collect();
    let state = RealizeState { ds, n };
    let target = opts.tol * opts.tol;
    let mut best = f64::INFINITY;
    let mut best_qs: Option<Vec<DMatrix<C>>> = None;
    for attempt in 0..=opts.restarts {
        let mut qs: Vec<DMatrix<C>> = if attempt == 0 {
            (0..l).map(|_| DMatrix::identity(n, n)).collect()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(opts.seed, attempt as u64));
            (0..l).map(|_| qr_unitary(ginibre(n, &mut rng))).collect()
        };
        let f = state.descend(&mut qs, opts.max_iter, target);
        if f < best {
            best = f;
            best_qs = Some(qs);
        }
        if best <= target {
            break;
        }
    }
    let residual = best.sqrt();
    if best <= target {
        let qs = best_qs.expect("a successful attempt stored its matrices");
        let matrices = qs
            .iter()
            .zip(&state.ds)
            .map(|(q, d)| UnitaryMatrix::new(q * d * q.adjoint()))
            .collect::<Result<Vec<_>>>()?;
        Ok(RealizeOutcome::Realized(Realization { matrices, residual }))
    } else {
        Ok(RealizeOutcome::Failed { best_residual: residual })
    }
}
