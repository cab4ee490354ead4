//! JSON encoding helpers shared by the library and the CLI.
//!
//! Exact rationals cross the JSON boundary as `"p/q"` strings (plain `"p"`
//! when the denominator is 1), never as floats, so files round-trip
//! bit-exactly.  Every persisted document carries `"schema": 1`.

use std::str::FromStr;

use num_traits::ToPrimitive;

use crate::alcove::Rat;
use crate::error::{Error, Result};

/// Current version tag written into every JSON document.
pub const SCHEMA_VERSION: u32 = 1;

pub fn rat_to_string(x: &Rat) -> String {
    x.to_string()
}

pub fn rat_from_string(s: &str) -> Result<Rat> {
    Rat::from_str(s.trim())
        .map_err(|e| Error::InvalidTuple(format!("cannot parse rational {:?}: {}", s, e)))
}

pub fn rat_to_f64(x: &Rat) -> f64 {
    // Ratio::to_f64 is exact up to one rounding for any magnitude we emit.
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn rats_to_strings(xs: &[Rat]) -> Vec<String> {
    xs.iter().map(rat_to_string).collect()
}

pub fn rats_from_strings(ss: &[String]) -> Result<Vec<Rat>> {
    ss.iter().map(|s| rat_from_string(s)).collect()
}

/// Rejects documents from a different schema generation.
pub fn check_schema(found: u32, what: &str) -> Result<()> {
    if found != SCHEMA_VERSION {
        return Err(Error::InvalidTuple(format!(
            "{}: unsupported schema version {} (expected {})",
            what, found, SCHEMA_VERSION
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alcove::rat;

    #[test]
    fn rational_strings_round_trip() {
        for (p, q) in [(1i64, 4i64), (-1, 4), (0, 1), (7, 1), (-22, 7)] {
            let x = rat(p, q);
            let s = rat_to_string(&x);
            assert_eq!(rat_from_string(&s).unwrap(), x);
        }
        assert_eq!(rat_to_string(&rat(1, 4)), "1/4");
        assert_eq!(rat_to_string(&rat(-3, 1)), "-3");
        assert_eq!(rat_from_string(" 2/8 ").unwrap(), rat(1, 4));
        assert!(rat_from_string("x").is_err());
        assert!(rat_from_string("1/0").is_err());
    }

    #[test]
    fn f64_conversion() {
        assert_eq!(rat_to_f64(&rat(1, 4)), 0.25);
        assert_eq!(rat_to_f64(&rat(-1, 2)), -0.5);
    }
}
