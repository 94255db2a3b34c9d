//! Exact rational scalars.

use alloc::string::{String, ToString};
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rat = num_rational::BigRational;

/// Parses `"n"` or `"p/q"` (optional sign on the numerator). Decimal points
/// are rejected.
pub fn parse(s: &str) -> Option<Rat> {
    let s = s.trim();
    if s.is_empty() || s.contains('.') {
        return None;
    }
    match s.split_once('/') {
        None => BigInt::from_str(s).ok().map(Rat::from_integer),
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).ok()?;
            let q = BigInt::from_str(q.trim()).ok()?;
            if q == BigInt::from(0) {
                return None;
            }
            Some(Rat::new(p, q))
        }
    }
}

/// Canonical string form: `"n"` for integers, `"p/q"` otherwise.
pub fn format(r: &Rat) -> String {
    r.to_string()
}

pub fn from_i64(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

pub fn from_frac(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Nearest double. Values outside the f64 range map to infinities.
pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
