//! Exact rational numbers.
//!
//! All quantities in this crate (correction terms, plurigenera, volumes)
//! are rationals with arbitrary-precision integer components, kept in
//! lowest terms with a positive denominator. `num-rational` provides
//! exactly that contract; this module adds the small construction,
//! conversion, and formatting helpers the rest of the crate needs.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::Error;

/// The exact rational type used everywhere. No rounding ever occurs.
pub type Rational = num_rational::BigRational;

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as an exact rational.
pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Extracts `r` as an `i64` if it is an integer in range.
pub fn to_integer(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}

/// True if `r` is a nonnegative integer.
pub fn is_nonnegative_integer(r: &Rational) -> bool {
    r.is_integer() && !r.is_negative()
}

/// Always renders with an explicit denominator: `3` becomes `"3/1"`.
pub fn explicit_ratio_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"n"`, `"n/d"`, or `"-n/d"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let bad = || Error::Internal(format!("malformed rational `{text}`"));
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text, None),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = match den {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::from(1),
    };
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}
