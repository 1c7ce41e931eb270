//! Exact rational scalars and the `"p/q"` wire format.
//!
//! Every coordinate, time and bound in this crate is a [`Rational`]. JSON
//! reports serialize rationals as the string `"p/q"` with `q > 0` and
//! `gcd(|p|, q) = 1`; [`parse_rational`] accepts that format (and bare
//! integers) and normalizes to lowest terms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use std::str::FromStr;

pub type Rational = BigRational;

/// Shorthand for `numer/denom` from machine integers.
///
/// Panics if `denom` is zero.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Whole number as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RationalParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed integer in rational literal `{0}`")]
    BadInteger(String),
    #[error("denominator must be positive in `{0}`")]
    NonPositiveDenominator(String),
}

/// Parses `"p/q"` or `"p"`. The denominator must be positive; the result is
/// reduced to lowest terms.
pub fn parse_rational(s: &str) -> Result<Rational, RationalParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(RationalParseError::Empty);
    }
    let (numer, denom) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n = BigInt::from_str(numer).map_err(|_| RationalParseError::BadInteger(s.to_string()))?;
    let d = match denom {
        Some(d) => BigInt::from_str(d).map_err(|_| RationalParseError::BadInteger(s.to_string()))?,
        None => BigInt::from(1),
    };
    if !d.is_positive() {
        return Err(RationalParseError::NonPositiveDenominator(s.to_string()));
    }
    Ok(Rational::new(n, d))
}

/// Canonical `"p/q"` rendering (always prints the denominator).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Lossy conversion for plots and convenience fields.
pub fn approx_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Decimal approximation with 12 significant digits.
pub fn approx_string(r: &Rational) -> String {
    let v = approx_f64(r);
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    format!("{v:.11e}")
}

/// True if `r` lies in the closed interval `[0, 1]`.
pub fn in_unit_interval(r: &Rational) -> bool {
    !r.is_negative() && *r <= rat_int(1)
}
