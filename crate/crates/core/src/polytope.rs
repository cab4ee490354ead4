//! Inequality systems for the eigenvalue polytopes Δ_q(l) and Δ(l).
//!
//! Multiplicative side: (ξ_1, …, ξ_l) lies in Δ_q(l) — i.e. there exist
//! A_k ∈ SU(n) with alcove logarithms ξ_k and A_1 ⋯ A_l = I — iff for
//! every r, every l-tuple of r-subsets, and the degree d forced by the
//! grading,
//!
//! ```text
//! Σ_k Σ_{i ∈ I_k} ξ_{k,i}  ≤  d      whenever  ⟨σ_{I_1},…,σ_{I_l}⟩_d > 0.
//! ```
//!
//! Additive side (Hermitian H_k with Σ H_k = 0): the same shape of
//! inequality with right-hand side 0, indexed by nonvanishing classical
//! intersection numbers — exactly the degree-0 slice of the quantum
//! system.  Generation enumerates subset tuples, reuses the prefix
//! product across the last factor, and emits records in the canonical
//! order (r, subsets lexicographic, d).  Membership is exact rational
//! arithmetic end to end.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::alcove::{rat_int, AlcovePoint, Rat};
use crate::error::{Error, Result};
use crate::lr::{self, CohomologyClass, LrCache};
use crate::quantum::{self, QuantumClass};
use crate::schubert::{GrassCtx, SchubertIndex};
use crate::serial;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SystemKind {
    Multiplicative,
    Additive,
}

/// One facet candidate: Σ_k Σ_{i∈I_k} ξ_{k,i} ≤ d, witnessed by the
/// positive Gromov–Witten (d > 0 possible) or intersection (d = 0)
/// number `gw`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Inequality {
    n: u32,
    l: u32,
    r: u32,
    subsets: Vec<SchubertIndex>,
    d: u32,
    gw: u64,
}

impl Inequality {
    pub fn new(
        n: u32,
        l: u32,
        r: u32,
        subsets: Vec<SchubertIndex>,
        d: u32,
        gw: u64,
    ) -> Result<Self> {
        if subsets.len() != l as usize {
            return Err(Error::InvalidSystem(format!(
                "inequality lists {} subsets for l = {}",
                subsets.len(),
                l
            )));
        }
        for i in &subsets {
            if i.n() != n || i.rank() != r {
                return Err(Error::InvalidSystem(format!(
                    "subset {:?} is not an r = {} subset of {{1..{}}}",
                    i, r, n
                )));
            }
        }
        let total: u64 = subsets.iter().map(|i| i.codim()).sum();
        let ctx = GrassCtx::new(r, n)?;
        if total != ctx.dim() + n as u64 * d as u64 {
            return Err(Error::InvalidSystem(format!(
                "grading broken: codims sum to {}, expected {} + {}·{}",
                total,
                ctx.dim(),
                n,
                d
            )));
        }
        if gw == 0 {
            return Err(Error::InvalidSystem("witness gw must be positive".into()));
        }
        Ok(Inequality { n, l, r, subsets, d, gw })
    }

    /// Builds a record without the grading/witness checks.  Only for
    /// negative-control tests that need a deliberately false inequality;
    /// nothing in the library emits unchecked records.
    #[doc(hidden)]
    pub fn from_parts_unchecked(
        n: u32,
        l: u32,
        r: u32,
        subsets: Vec<Vec<u32>>,
        d: u32,
        gw: u64,
    ) -> Inequality {
        let subsets = subsets
            .into_iter()
            .map(|s| SchubertIndex::new(n, s).expect("unchecked record still needs real subsets"))
            .collect();
        Inequality { n, l, r, subsets, d, gw }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn subsets(&self) -> &[SchubertIndex] {
        &self.subsets
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn gw(&self) -> u64 {
        self.gw
    }

    /// Exact LHS − RHS; positive means violated.
    pub fn excess(&self, points: &[Vec<Rat>]) -> Rat {
        let mut lhs = rat_int(0);
        for (k, idx) in self.subsets.iter().enumerate() {
            for &i in idx.elems() {
                lhs += points[k][(i - 1) as usize].clone();
            }
        }
        lhs - rat_int(self.d as i64)
    }

    /// Floating-point LHS − RHS for the sampling layer.
    pub fn excess_f64(&self, points: &[Vec<f64>]) -> f64 {
        let mut lhs = 0.0;
        for (k, idx) in self.subsets.iter().enumerate() {
            for &i in idx.elems() {
                lhs += points[k][(i - 1) as usize];
            }
        }
        lhs - self.d as f64
    }

    /// Canonical ordering key: r, then subsets, then d.
    fn key(&self) -> (u32, Vec<&[u32]>, u32) {
        (self.r, self.subsets.iter().map(|i| i.elems()).collect(), self.d)
    }
}

#[derive(Serialize, Deserialize)]
struct InequalityRepr {
    n: u32,
    l: u32,
    r: u32,
    subsets: Vec<Vec<u32>>,
    d: u32,
    gw: u64,
}

impl Serialize for Inequality {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        InequalityRepr {
            n: self.n,
            l: self.l,
            r: self.r,
            subsets: self.subsets.iter().map(|i| i.elems().to_vec()).collect(),
            d: self.d,
            gw: self.gw,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Inequality {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = InequalityRepr::deserialize(d)?;
        let subsets = repr
            .subsets
            .into_iter()
            .map(|elems| SchubertIndex::new(repr.n, elems))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Inequality::new(repr.n, repr.l, repr.r, subsets, repr.d, repr.gw)
            .map_err(serde::de::Error::custom)
    }
}

/// A complete inequality description of Δ_q(l) (multiplicative) or Δ(l)
/// (additive).  The alcove (resp. chamber) constraints are implicit.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InequalitySystem {
    pub kind: SystemKind,
    pub n: u32,
    pub l: u32,
    pub inequalities: Vec<Inequality>,
}

#[derive(Serialize, Deserialize)]
struct SystemRepr {
    schema: u32,
    kind: SystemKind,
    n: u32,
    l: u32,
    inequalities: Vec<Inequality>,
}

impl Serialize for InequalitySystem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SystemRepr {
            schema: serial::SCHEMA_VERSION,
            kind: self.kind,
            n: self.n,
            l: self.l,
            inequalities: self.inequalities.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for InequalitySystem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = SystemRepr::deserialize(d)?;
        serial::check_schema(repr.schema, "inequality system").map_err(serde::de::Error::custom)?;
        let sys = InequalitySystem {
            kind: repr.kind,
            n: repr.n,
            l: repr.l,
            inequalities: repr.inequalities,
        };
        sys.validate().map_err(serde::de::Error::custom)?;
        Ok(sys)
    }
}

impl InequalitySystem {
    /// Structural re-validation: dimensions, grading, kind constraints,
    /// canonical order, no duplicates.
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 || self.l < 1 {
            return Err(Error::InvalidSystem(format!(
                "need n >= 2 and l >= 1, got n={}, l={}",
                self.n, self.l
            )));
        }
        for ineq in &self.inequalities {
            if ineq.n != self.n || ineq.l != self.l {
                return Err(Error::InvalidSystem(format!(
                    "record with n={}, l={} inside a system with n={}, l={}",
                    ineq.n, ineq.l, self.n, self.l
                )));
            }
            if self.kind == SystemKind::Additive && ineq.d != 0 {
                return Err(Error::InvalidSystem(
                    "additive system contains a record with d > 0".into(),
                ));
            }
        }
        for w in self.inequalities.windows(2) {
            if w[0].key() >= w[1].key() {
                return Err(Error::InvalidSystem(
                    "records out of canonical order or duplicated".into(),
                ));
            }
        }
        Ok(())
    }
}

/// A candidate spectrum tuple.  Multiplicative points satisfy the full
/// alcove constraints; additive points are weakly decreasing with one
/// global trace condition: the sum over all points of all coordinates is
/// zero (eigenvalues of Hermitian matrices summing to the zero matrix).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EigenTuple {
    kind: SystemKind,
    points: Vec<Vec<Rat>>,
}

impl EigenTuple {
    pub fn new(kind: SystemKind, points: Vec<Vec<Rat>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidTuple("need at least one point".into()));
        }
        let n = points[0].len();
        if n < 2 {
            return Err(Error::InvalidTuple("need n >= 2 coordinates".into()));
        }
        if points.iter().any(|p| p.len() != n) {
            return Err(Error::InvalidTuple("points have inconsistent dimensions".into()));
        }
        match kind {
            SystemKind::Multiplicative => {
                for (k, p) in points.iter().enumerate() {
                    AlcovePoint::new(p.clone())
                        .map_err(|e| Error::InvalidTuple(format!("point {}: {}", k + 1, e)))?;
                }
            }
            SystemKind::Additive => {
                for (k, p) in points.iter().enumerate() {
                    if p.windows(2).any(|w| w[0] < w[1]) {
                        return Err(Error::InvalidTuple(format!(
                            "point {}: coordinates not weakly decreasing",
                            k + 1
                        )));
                    }
                }
                let total: Rat = points.iter().flatten().cloned().sum();
                if total != rat_int(0) {
                    return Err(Error::InvalidTuple(format!("total trace is {}, not zero", total)));
                }
            }
        }
        Ok(EigenTuple { kind, points })
    }

    pub fn multiplicative(points: Vec<AlcovePoint>) -> Result<Self> {
        EigenTuple::new(
            SystemKind::Multiplicative,
            points.into_iter().map(|p| p.into_coords()).collect(),
        )
    }

    pub fn zero(kind: SystemKind, n: u32, l: u32) -> Result<Self> {
        EigenTuple::new(kind, vec![vec![rat_int(0); n as usize]; l as usize])
    }

    pub fn kind(&self) -> SystemKind {
        self.kind
    }

    pub fn n(&self) -> u32 {
        self.points[0].len() as u32
    }

    pub fn l(&self) -> u32 {
        self.points.len() as u32
    }

    pub fn points(&self) -> &[Vec<Rat>] {
        &self.points
    }

    /// Pointwise involution (ξ ↦ *ξ): the tuple of the inverse matrices.
    pub fn involution(&self) -> EigenTuple {
        let points =
            self.points.iter().map(|p| p.iter().rev().map(|c| -c.clone()).collect()).collect();
        EigenTuple { kind: self.kind, points }
    }

    /// Scales every coordinate by s; valid for 0 ≤ s ≤ 1 in both kinds.
    pub fn scale(&self, s: &Rat) -> Result<EigenTuple> {
        let points = self.points.iter().map(|p| p.iter().map(|c| c * s).collect()).collect();
        EigenTuple::new(self.kind, points)
    }

    /// The same coordinates reinterpreted under the other kind (used by
    /// the cone-property comparison of small tuples).
    pub fn with_kind(&self, kind: SystemKind) -> Result<EigenTuple> {
        EigenTuple::new(kind, self.points.clone())
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        self.points.iter().map(|p| p.iter().map(serial::rat_to_f64).collect()).collect()
    }
}

#[derive(Serialize, Deserialize)]
struct TupleRepr {
    schema: u32,
    kind: SystemKind,
    n: u32,
    points: Vec<Vec<String>>,
}

impl Serialize for EigenTuple {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TupleRepr {
            schema: serial::SCHEMA_VERSION,
            kind: self.kind,
            n: self.n(),
            points: self.points.iter().map(|p| serial::rats_to_strings(p)).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for EigenTuple {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = TupleRepr::deserialize(d)?;
        serial::check_schema(repr.schema, "eigenvalue tuple").map_err(serde::de::Error::custom)?;
        let points = repr
            .points
            .iter()
            .map(|p| serial::rats_from_strings(p))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        let tuple = EigenTuple::new(repr.kind, points).map_err(serde::de::Error::custom)?;
        if tuple.n() != repr.n {
            return Err(serde::de::Error::custom(format!(
                "file claims n = {} but points have {} coordinates",
                repr.n,
                tuple.n()
            )));
        }
        Ok(tuple)
    }
}

/// One violated inequality with its exact excess (LHS − RHS > 0).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Violation {
    pub inequality: Inequality,
    pub excess: Rat,
}

impl Serialize for Violation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            inequality: &'a Inequality,
            excess: String,
        }
        Repr { inequality: &self.inequality, excess: serial::rat_to_string(&self.excess) }
            .serialize(s)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct MembershipReport {
    pub member: bool,
    pub violations: Vec<Violation>,
}

/// Complete inequality description of Δ_q(l) on SU(n).
pub fn generate_multiplicative(
    n: u32,
    l: u32,
    cache: Option<&LrCache>,
) -> Result<InequalitySystem> {
    generate(SystemKind::Multiplicative, n, l, cache)
}

/// Complete inequality description of the additive cone Δ(l).
pub fn generate_additive(n: u32, l: u32, cache: Option<&LrCache>) -> Result<InequalitySystem> {
    generate(SystemKind::Additive, n, l, cache)
}

fn generate(kind: SystemKind, n: u32, l: u32, cache: Option<&LrCache>) -> Result<InequalitySystem> {
    if n < 2 || l < 1 {
        return Err(Error::InvalidSystem(format!("need n >= 2 and l >= 1, got n={}, l={}", n, l)));
    }
    let local_cache;
    let cache = match cache {
        Some(c) => c,
        None => {
            local_cache = LrCache::new();
            &local_cache
        }
    };
    let mut inequalities: Vec<Inequality> = (1..n)
        .into_par_iter()
        .map(|r| generate_for_rank(kind, n, l, r, cache))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    inequalities.sort_by(|a, b| a.key().cmp(&b.key()));
    debug_assert!(inequalities.windows(2).all(|w| w[0].key() != w[1].key()));
    let sys = InequalitySystem { kind, n, l, inequalities };
    debug_assert!(sys.validate().is_ok());
    Ok(sys)
}

fn generate_for_rank(
    kind: SystemKind,
    n: u32,
    l: u32,
    r: u32,
    cache: &LrCache,
) -> Result<Vec<Inequality>> {
    let ctx = GrassCtx::new(r, n)?;
    let subsets = ctx.subsets();
    // Degrees are bounded by the grading: total codim ≤ l·r(n−r).
    let degree_cap = match kind {
        SystemKind::Multiplicative => ((l as u64 * ctx.dim() - ctx.dim()) / n as u64) as u32,
        SystemKind::Additive => 0,
    };
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(l as usize - 1);
    let prefix = QuantumClass::unit(ctx);
    descend(kind, ctx, n, l, &subsets, cache, degree_cap, &prefix, 0, &mut chosen, &mut out)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn descend(
    kind: SystemKind,
    ctx: GrassCtx,
    n: u32,
    l: u32,
    subsets: &[SchubertIndex],
    cache: &LrCache,
    degree_cap: u32,
    prefix: &QuantumClass,
    codim_sum: u64,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Inequality>,
) -> Result<()> {
    if chosen.len() as u32 == l - 1 {
        for last in subsets {
            let total = codim_sum + last.codim();
            if total < ctx.dim() {
                continue;
            }
            let excess = total - ctx.dim();
            if !excess.is_multiple_of(n as u64) {
                continue;
            }
            let d = (excess / n as u64) as u32;
            if d > degree_cap {
                continue;
            }
            let target = last.dual().to_partition(ctx)?;
            let coeff = prefix.coefficient(&target, d);
            if coeff.is_positive() {
                let gw = coeff
                    .to_u64()
                    .ok_or_else(|| Error::Internal("witness invariant exceeds u64".into()))?;
                let mut tuple: Vec<SchubertIndex> =
                    chosen.iter().map(|&i| subsets[i].clone()).collect();
                tuple.push(last.clone());
                out.push(Inequality::new(n, l, ctx.r(), tuple, d, gw)?);
            }
        }
        return Ok(());
    }
    for (i, next) in subsets.iter().enumerate() {
        let lam = next.to_partition(ctx)?;
        let step = match kind {
            SystemKind::Multiplicative => {
                let b = QuantumClass::basis(ctx, lam, 0)?;
                quantum::quantum_product_capped(prefix, &b, Some(cache), Some(degree_cap))?
            }
            SystemKind::Additive => {
                let b = CohomologyClass::basis(ctx, lam)?;
                let classical = lr::classical_product(&prefix.degree_zero_part(), &b, Some(cache))?;
                let mut q = QuantumClass::zero(ctx);
                for (nu, c) in classical.terms() {
                    q.add_term(nu.clone(), 0, c.clone());
                }
                q
            }
        };
        if step.is_zero() {
            continue;
        }
        chosen.push(i);
        descend(
            kind,
            ctx,
            n,
            l,
            subsets,
            cache,
            degree_cap,
            &step,
            codim_sum + next.codim(),
            chosen,
            out,
        )?;
        chosen.pop();
    }
    Ok(())
}

/// Exact membership test of a tuple against a system of matching kind
/// and dimensions.  Chamber/alcove constraints are enforced by the
/// `EigenTuple` type itself, so only the system inequalities remain.
pub fn check_membership(sys: &InequalitySystem, tuple: &EigenTuple) -> Result<MembershipReport> {
    if tuple.kind() != sys.kind {
        return Err(Error::InvalidTuple("tuple kind does not match system kind".into()));
    }
    if tuple.n() != sys.n || tuple.l() != sys.l {
        return Err(Error::InvalidTuple(format!(
            "tuple has n={}, l={} but system has n={}, l={}",
            tuple.n(),
            tuple.l(),
            sys.n,
            sys.l
        )));
    }
    let mut violations = Vec::new();
    for ineq in &sys.inequalities {
        let excess = ineq.excess(tuple.points());
        if excess > rat_int(0) {
            violations.push(Violation { inequality: ineq.clone(), excess });
        }
    }
    Ok(MembershipReport { member: violations.is_empty(), violations })
}

/// Outcome of transporting every record along the full center symmetry
/// group C(l) = {(m_1,…,m_l) : Σ m_k ≡ 0 mod n}.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ClosureReport {
    pub transports_checked: u64,
    /// Records whose transport left the system (empty = closed).
    pub escapes: Vec<ClosureEscape>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosureEscape {
    pub inequality: Inequality,
    pub shifts: Vec<i64>,
    pub reason: String,
}

/// Verifies that the system is invariant under the center symmetry: the
/// transport of each record by each element of C(l) must be a record of
/// the system with the same witness invariant.
pub fn symmetry_closure_check(sys: &InequalitySystem) -> Result<ClosureReport> {
    if sys.kind != SystemKind::Multiplicative {
        return Err(Error::InvalidSystem("closure check applies to multiplicative systems".into()));
    }
    let n = sys.n as i64;
    let l = sys.l as usize;
    let lookup: HashMap<(u32, Vec<SchubertIndex>, u32), u64> =
        sys.inequalities.iter().map(|q| ((q.r, q.subsets.clone(), q.d), q.gw)).collect();
    let mut report = ClosureReport::default();
    // Enumerate C(l): free choice of m_1..m_{l−1}, the last fixed mod n.
    let count = (n as u64).pow(l as u32 - 1).max(1);
    for code in 0..count {
        let mut shifts = Vec::with_capacity(l);
        let mut rest = code;
        for _ in 0..l - 1 {
            shifts.push((rest % n as u64) as i64);
            rest /= n as u64;
        }
        let partial: i64 = shifts.iter().sum();
        shifts.push((-partial).rem_euclid(n));
        for ineq in &sys.inequalities {
            report.transports_checked += 1;
            let (moved, d) = quantum::symmetry_transport(&ineq.subsets, ineq.d as i64, &shifts)?;
            let found = u32::try_from(d).ok().and_then(|d| lookup.get(&(ineq.r, moved, d)));
            match found {
                Some(&gw) if gw == ineq.gw => {}
                Some(&gw) => report.escapes.push(ClosureEscape {
                    inequality: ineq.clone(),
                    shifts: shifts.clone(),
                    reason: format!("witness changed: {} vs {}", ineq.gw, gw),
                }),
                None => report.escapes.push(ClosureEscape {
                    inequality: ineq.clone(),
                    shifts: shifts.clone(),
                    reason: "transported record missing".into(),
                }),
            }
        }
    }
    Ok(report)
}

/// Re-verifies the defining invariants of every record: grading and a
/// freshly recomputed witness invariant.  Used by self-tests.
pub fn revalidate_witnesses(sys: &InequalitySystem, cache: Option<&LrCache>) -> Result<()> {
    sys.validate()?;
    for ineq in &sys.inequalities {
        let ctx = GrassCtx::new(ineq.r, ineq.n)?;
        let gw = match sys.kind {
            SystemKind::Multiplicative => {
                quantum::gw_invariant(&ineq.subsets, ineq.d as i64, ctx, cache)?
            }
            SystemKind::Additive => lr::intersection_number(&ineq.subsets, ctx, cache)?,
        };
        if gw != BigInt::from(ineq.gw) {
            return Err(Error::InvalidSystem(format!(
                "stored witness {} disagrees with recomputed {} for {:?}",
                ineq.gw, gw, ineq.subsets
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alcove::rat;

    fn idx(n: u32, elems: &[u32]) -> SchubertIndex {
        SchubertIndex::new(n, elems.iter().copied()).unwrap()
    }

    fn su2_tuple(ts: &[(i64, i64)]) -> EigenTuple {
        let points = ts.iter().map(|&(p, q)| vec![rat(p, q), rat(-p, q)]).collect();
        EigenTuple::new(SystemKind::Multiplicative, points).unwrap()
    }

    #[test]
    fn su2_three_factor_system_is_exactly_the_four_records() {
        let sys = generate_multiplicative(2, 3, None).unwrap();
        assert_eq!(sys.inequalities.len(), 4);
        let expect = |elems: [&[u32]; 3], d: u32| {
            let subsets: Vec<_> = elems.iter().map(|e| idx(2, e)).collect();
            assert!(
                sys.inequalities
                    .iter()
                    .any(|q| q.subsets() == subsets.as_slice() && q.d() == d && q.gw() == 1),
                "missing record {:?} at d={}",
                subsets,
                d
            );
        };
        expect([&[1], &[2], &[2]], 0);
        expect([&[2], &[1], &[2]], 0);
        expect([&[2], &[2], &[1]], 0);
        expect([&[1], &[1], &[1]], 1);
    }

    #[test]
    fn su2_pairing_system() {
        let sys = generate_multiplicative(2, 2, None).unwrap();
        assert_eq!(sys.inequalities.len(), 2);
        assert_eq!(sys.inequalities[0].subsets(), &[idx(2, &[1]), idx(2, &[2])]);
        assert_eq!(sys.inequalities[1].subsets(), &[idx(2, &[2]), idx(2, &[1])]);
        assert!(sys.inequalities.iter().all(|q| q.d() == 0 && q.gw() == 1));
    }

    #[test]
    fn su2_additive_is_the_three_triangle_inequalities() {
        let sys = generate_additive(2, 3, None).unwrap();
        assert_eq!(sys.inequalities.len(), 3);
        for q in &sys.inequalities {
            assert_eq!(q.d(), 0);
            let singles: Vec<u32> = q.subsets().iter().map(|i| i.elems()[0]).collect();
            // Exactly one of the three positions carries {1}.
            assert_eq!(singles.iter().filter(|&&e| e == 1).count(), 1);
        }
    }

    #[test]
    fn single_factor_system_pins_zero() {
        let sys = generate_multiplicative(3, 1, None).unwrap();
        // One record per rank: the top partial sums ≤ 0.
        assert_eq!(sys.inequalities.len(), 2);
        assert_eq!(sys.inequalities[0].subsets(), &[idx(3, &[1])]);
        assert_eq!(sys.inequalities[1].subsets(), &[idx(3, &[1, 2])]);
        let zero = EigenTuple::zero(SystemKind::Multiplicative, 3, 1).unwrap();
        assert!(check_membership(&sys, &zero).unwrap().member);
        let nonzero = EigenTuple::new(
            SystemKind::Multiplicative,
            vec![vec![rat(1, 3), rat(0, 1), rat(-1, 3)]],
        )
        .unwrap();
        assert!(!check_membership(&sys, &nonzero).unwrap().member);
    }

    #[test]
    fn membership_examples_su2() {
        let sys = generate_multiplicative(2, 3, None).unwrap();
        let inside = su2_tuple(&[(1, 4), (1, 4), (1, 4)]);
        let report = check_membership(&sys, &inside).unwrap();
        assert!(report.member);
        assert!(report.violations.is_empty());

        let central = su2_tuple(&[(1, 2), (1, 2), (1, 2)]);
        let report = check_membership(&sys, &central).unwrap();
        assert!(!report.member);
        assert_eq!(report.violations.len(), 1);
        let v = &report.violations[0];
        assert_eq!(v.inequality.subsets(), &[idx(2, &[1]), idx(2, &[1]), idx(2, &[1])]);
        assert_eq!(v.excess, rat(1, 2)); // 3/2 − 1

        let zero = EigenTuple::zero(SystemKind::Multiplicative, 2, 3).unwrap();
        assert!(check_membership(&sys, &zero).unwrap().member);
    }

    #[test]
    fn membership_rejects_mismatches() {
        let sys = generate_multiplicative(2, 3, None).unwrap();
        let wrong_l = su2_tuple(&[(1, 4), (1, 4)]);
        assert!(check_membership(&sys, &wrong_l).is_err());
        let additive =
            EigenTuple::new(SystemKind::Additive, vec![vec![rat(1, 4), rat(-1, 4)]; 3]).unwrap();
        assert!(check_membership(&sys, &additive).is_err());
    }

    #[test]
    fn tuple_validation_names_invariants() {
        // Multiplicative: spread > 1 rejected.
        let bad = EigenTuple::new(SystemKind::Multiplicative, vec![vec![rat(3, 4), rat(-3, 4)]]);
        assert!(matches!(bad, Err(Error::InvalidTuple(m)) if m.contains("spread")));
        // Additive: per-point sums may be nonzero while the total is zero.
        let ok = EigenTuple::new(
            SystemKind::Additive,
            vec![vec![rat(1, 1), rat(1, 2)], vec![rat(-1, 2), rat(-1, 1)]],
        );
        assert!(ok.is_ok());
        let bad_total = EigenTuple::new(
            SystemKind::Additive,
            vec![vec![rat(1, 1), rat(1, 2)], vec![rat(0, 1), rat(-1, 1)]],
        );
        assert!(matches!(bad_total, Err(Error::InvalidTuple(m)) if m.contains("trace")));
        let not_sorted = EigenTuple::new(
            SystemKind::Additive,
            vec![vec![rat(0, 1), rat(1, 1)], vec![rat(0, 1), rat(-1, 1)]],
        );
        assert!(matches!(not_sorted, Err(Error::InvalidTuple(m)) if m.contains("decreasing")));
    }

    #[test]
    fn quantum_weyl_pairs_present() {
        for n in [3u32, 4] {
            let sys = generate_multiplicative(n, 3, None).unwrap();
            for i in 1..n {
                for j in 1..n {
                    if i + j > n {
                        continue;
                    }
                    // Upper bound: ({i},{j},{n+1−i−j}) at d = 1, r = 1.
                    let upper = vec![idx(n, &[i]), idx(n, &[j]), idx(n, &[n + 1 - i - j])];
                    assert!(
                        sys.inequalities
                            .iter()
                            .any(|q| q.subsets() == upper.as_slice() && q.d() == 1),
                        "missing upper Weyl ({},{}) for n={}",
                        i,
                        j,
                        n
                    );
                    // Lower bound: complements, d = 0, r = n−1.
                    let co = |e: u32| {
                        let elems: Vec<u32> = (1..=n).filter(|&x| x != e).collect();
                        idx(n, &elems)
                    };
                    let lower = vec![co(i), co(j), co(n + 2 - i - j)];
                    assert!(
                        sys.inequalities
                            .iter()
                            .any(|q| q.subsets() == lower.as_slice() && q.d() == 0),
                        "missing lower Weyl ({},{}) for n={}",
                        i,
                        j,
                        n
                    );
                }
            }
        }
    }

    #[test]
    fn closure_check_su2_and_su3() {
        for n in [2u32, 3] {
            let sys = generate_multiplicative(n, 3, None).unwrap();
            let report = symmetry_closure_check(&sys).unwrap();
            assert!(report.escapes.is_empty(), "escapes for n={}", n);
            assert_eq!(
                report.transports_checked,
                (n as u64).pow(2) * sys.inequalities.len() as u64
            );
        }
    }

    #[test]
    fn generated_systems_revalidate() {
        for (n, l) in [(2u32, 3u32), (3, 2), (3, 3), (4, 2)] {
            let sys = generate_multiplicative(n, l, None).unwrap();
            revalidate_witnesses(&sys, None).unwrap();
            let add = generate_additive(n, l, None).unwrap();
            revalidate_witnesses(&add, None).unwrap();
        }
    }

    #[test]
    fn json_round_trip() {
        let sys = generate_multiplicative(3, 3, None).unwrap();
        let text = serde_json::to_string_pretty(&sys).unwrap();
        let back: InequalitySystem = serde_json::from_str(&text).unwrap();
        assert_eq!(sys, back);
        assert!(text.contains("\"schema\": 1"));

        let tuple = su2_tuple(&[(1, 4), (1, 4), (1, 4)]);
        let text = serde_json::to_string(&tuple).unwrap();
        let back: EigenTuple = serde_json::from_str(&text).unwrap();
        assert_eq!(tuple, back);
        assert!(text.contains("\"1/4\""));
    }

    #[test]
    fn corrupted_json_is_rejected() {
        let sys = generate_multiplicative(2, 3, None).unwrap();
        let mut v = serde_json::to_value(&sys).unwrap();
        // Break the grading of the first record.
        v["inequalities"][0]["d"] = serde_json::json!(2);
        assert!(serde_json::from_value::<InequalitySystem>(v.clone()).is_err());
        v["inequalities"][0]["d"] = serde_json::json!(0);
        v["schema"] = serde_json::json!(9);
        assert!(serde_json::from_value::<InequalitySystem>(v).is_err());
    }
}
