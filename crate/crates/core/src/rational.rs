//! Exact rational scalars and their canonical text form.
//!
//! All function values and norms in this crate are `Rational`s: reduced
//! fractions with positive denominator, backed by arbitrary-precision
//! integers. The text form is `p/q` (or just `p` when the denominator is 1)
//! and round-trips bit-exactly.

use alloc::string::String;
use core::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

/// Exact scalar: reduced fraction, denominator >= 1.
pub type Rational = BigRational;

/// Shorthand constructor from machine integers; panics on `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as a rational.
pub fn rat_int(num: i64) -> Rational {
    BigRational::from_integer(BigInt::from(num))
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseRationalError {
    input: String,
}

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational `{}` (expected `p` or `p/q`)", self.input)
    }
}

/// Parses `p` or `p/q` with optional leading `-`; fails on zero denominators.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError { input: String::from(s) };
    let s = s.trim();
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num: BigInt = num_str.parse().map_err(|_| err())?;
    let den: BigInt = match den_str {
        Some(d) => d.parse().map_err(|_| err())?,
        None => BigInt::one(),
    };
    if den.is_zero() || den.is_negative() {
        return Err(err());
    }
    Ok(BigRational::new(num, den))
}

/// Canonical text form: `p/q`, or `p` alone when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    use alloc::format;
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
