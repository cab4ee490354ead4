//! The fundamental alcove of SU(n), over exact rationals.
//!
//! A point ξ = (ξ_1, …, ξ_n) records the eigenvalue logarithms of a
//! special unitary matrix, normalized so that
//!
//! ```text
//! ξ_1 ≥ ξ_2 ≥ … ≥ ξ_n,     Σ ξ_i = 0,     ξ_1 − ξ_n ≤ 1.
//! ```
//!
//! Every conjugacy class of SU(n) has exactly one such logarithm vector,
//! so alcove points are in bijection with conjugacy classes.  The center
//! Z/n of SU(n) acts on conjugacy classes by multiplication with
//! c = e^{2πi/n}·(rotation); on alcove coordinates one step of that action
//! is the affine rotation
//!
//! ```text
//! c·ξ = (ξ_2 + 1/n, ξ_3 + 1/n, …, ξ_n + 1/n, ξ_1 − (n−1)/n),
//! ```
//!
//! which visibly preserves all three defining constraints.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::serial;

/// Exact rational scalar used throughout the exact half of the crate.
pub type Rat = BigRational;

/// Shorthand constructor for p/q.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Shorthand constructor for an integer rational.
pub fn rat_int(p: i64) -> Rat {
    Rat::from_integer(BigInt::from(p))
}

/// A point of the fundamental alcove of SU(n).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlcovePoint {
    coords: Vec<Rat>,
}

impl AlcovePoint {
    /// Validates the three alcove constraints; the error names whichever
    /// one failed.
    pub fn new(coords: Vec<Rat>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::InvalidAlcove(format!(
                "need n >= 2 coordinates, got {}",
                coords.len()
            )));
        }
        if coords.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidAlcove("coordinates not weakly decreasing".into()));
        }
        let sum: Rat = coords.iter().sum();
        if sum != rat_int(0) {
            return Err(Error::InvalidAlcove(format!("coordinates sum to {}, not zero", sum)));
        }
        if coords[0].clone() - coords.last().unwrap().clone() > rat_int(1) {
            return Err(Error::InvalidAlcove("spread exceeds one".into()));
        }
        Ok(AlcovePoint { coords })
    }

    /// The origin, i.e. the class of the identity matrix.
    pub fn zero(n: u32) -> Result<Self> {
        AlcovePoint::new(vec![rat_int(0); n as usize])
    }

    pub fn n(&self) -> u32 {
        self.coords.len() as u32
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rat> {
        self.coords
    }

    /// ξ_1 − ξ_n.
    pub fn spread(&self) -> Rat {
        self.coords[0].clone() - self.coords.last().unwrap().clone()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c == &rat_int(0))
    }

    /// The class of the inverse matrix: *ξ = (−ξ_n, …, −ξ_1).
    pub fn involution(&self) -> AlcovePoint {
        let coords = self.coords.iter().rev().map(|c| -c.clone()).collect();
        AlcovePoint { coords }
    }

    /// m steps of the center action (m may be negative; the action has
    /// order n).
    pub fn center_act(&self, m: i64) -> AlcovePoint {
        let n = self.coords.len();
        let steps = m.rem_euclid(n as i64) as usize;
        let mut cur = self.coords.clone();
        let inv_n = rat(1, n as i64);
        for _ in 0..steps {
            let mut next: Vec<Rat> = Vec::with_capacity(n);
            for c in cur.iter().skip(1) {
                next.push(c.clone() + inv_n.clone());
            }
            next.push(cur[0].clone() - rat(n as i64 - 1, n as i64));
            cur = next;
        }
        AlcovePoint { coords: cur }
    }

    /// Coordinates as f64, for the floating-point verification layer.
    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(serial::rat_to_f64).collect()
    }
}

impl Serialize for AlcovePoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serial::rats_to_strings(&self.coords).serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlcovePoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let ss = Vec::<String>::deserialize(d)?;
        let coords = serial::rats_from_strings(&ss).map_err(serde::de::Error::custom)?;
        AlcovePoint::new(coords).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pt(coords: &[(i64, i64)]) -> AlcovePoint {
        AlcovePoint::new(coords.iter().map(|&(p, q)| rat(p, q)).collect()).unwrap()
    }

    #[test]
    fn validation_names_the_failed_invariant() {
        let inc = AlcovePoint::new(vec![rat_int(0), rat_int(1)]);
        assert!(matches!(inc, Err(Error::InvalidAlcove(m)) if m.contains("decreasing")));
        let sum = AlcovePoint::new(vec![rat(1, 2), rat(1, 4)]);
        assert!(matches!(sum, Err(Error::InvalidAlcove(m)) if m.contains("sum")));
        let spread = AlcovePoint::new(vec![rat(3, 4), rat_int(0), rat(-3, 4)]);
        assert!(matches!(spread, Err(Error::InvalidAlcove(m)) if m.contains("spread")));
        assert!(AlcovePoint::new(vec![rat_int(0)]).is_err());
    }

    #[test]
    fn involution_examples() {
        let x = pt(&[(1, 2), (0, 1), (-1, 2)]);
        assert_eq!(x.involution(), x); // symmetric spectrum
        let y = pt(&[(1, 2), (-1, 4), (-1, 4)]);
        assert_eq!(y.involution(), pt(&[(1, 4), (1, 4), (-1, 2)]));
        assert_eq!(y.involution().involution(), y);
    }

    #[test]
    fn center_act_su2_swaps_halves() {
        // n = 2: c·(t, −t) = (−t + 1/2, t − 1/2).
        let x = pt(&[(1, 4), (-1, 4)]);
        assert_eq!(x.center_act(1), pt(&[(1, 4), (-1, 4)]));
        let y = pt(&[(3, 8), (-3, 8)]);
        assert_eq!(y.center_act(1), pt(&[(1, 8), (-1, 8)]));
        assert_eq!(y.center_act(2), y);
    }

    #[test]
    fn center_act_fixed_point_and_identity() {
        let x = pt(&[(1, 3), (0, 1), (-1, 3)]);
        assert_eq!(x.center_act(1), x); // the central class is fixed
        let y = pt(&[(1, 3), (1, 3), (-2, 3)]);
        assert_eq!(y.center_act(0), y);
        assert_eq!(y.center_act(3), y);
        assert_ne!(y.center_act(1), y);
        assert_eq!(y.center_act(1).center_act(2), y);
        assert_eq!(y.center_act(-1), y.center_act(2));
    }

    #[test]
    fn zero_point() {
        let z = AlcovePoint::zero(4).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.center_act(1), pt(&[(1, 4), (1, 4), (1, 4), (-3, 4)]));
    }

    proptest! {
        #[test]
        fn center_act_preserves_the_alcove(
            raw in proptest::collection::vec((0i64..24, 1i64..=4), 2..6),
            m in -7i64..=7
        ) {
            // Random alcove point: sort numerators of k/24q in [0,1),
            // subtract the mean.
            let mut cs: Vec<Rat> = raw.iter().map(|&(k, q)| rat(k, 24 * q)).collect();
            cs.sort_by(|a, b| b.cmp(a));
            let n = cs.len() as i64;
            let mean: Rat = cs.iter().sum::<Rat>() / rat_int(n);
            let cs: Vec<Rat> = cs.into_iter().map(|c| c - mean.clone()).collect();
            let x = AlcovePoint::new(cs).unwrap();
            let y = x.center_act(m);
            // Constructor re-validation is the property.
            let y2 = AlcovePoint::new(y.coords().to_vec()).unwrap();
            prop_assert_eq!(y2.center_act(-m), x.clone());
            prop_assert_eq!(x.center_act(x.n() as i64), x);
        }
    }
}
