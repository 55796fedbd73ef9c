//! Exact rational scalars.
//!
//! Everything in this crate computes over arbitrary-precision rationals;
//! no floating point appears outside of display helpers and the numeric
//! root cross-checks. The canonical text form is `p/q` with `q > 0` and
//! `gcd(|p|, q) = 1`, or a bare integer `p`. Parsing accepts unreduced
//! input and re-normalizes.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision integer.
pub type Int = BigInt;

/// Arbitrary-precision rational, always kept reduced with positive
/// denominator (zero is `0/1`).
pub type Rational = num_rational::BigRational;

/// Shorthand for `n/d` from machine integers. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(Int::from(n), Int::from(d))
}

/// Shorthand for the integer `n` as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(Int::from(n))
}

/// Parses the `p/q` text form. Accepts a bare integer, an unreduced
/// fraction, a negative denominator, and a leading ASCII `-` or U+2212
/// minus; the result is always re-normalized.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let cleaned = s.trim().replace('\u{2212}', "-");
    let (num_s, den_s) = match cleaned.split_once('/') {
        Some((n, d)) => (n.trim().to_owned(), Some(d.trim().to_owned())),
        None => (cleaned, None),
    };
    let num: Int = num_s
        .parse()
        .map_err(|_| Error::Parse(format!("`{num_s}` is not an integer")))?;
    let den: Int = match &den_s {
        Some(d) => d
            .parse()
            .map_err(|_| Error::Parse(format!("`{d}` is not an integer")))?,
        None => Int::one(),
    };
    if den.is_zero() {
        return Err(Error::Parse("denominator is zero".into()));
    }
    Ok(Rational::new(num, den))
}

/// Renders the canonical text form: `p/q`, or bare `p` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// The exact nonnegative square root, when `x` is the square of a rational.
///
/// Negative input yields `None` rather than an error. Since `x` is reduced,
/// `x` is a rational square exactly when numerator and denominator are both
/// integer squares.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let sn = x.numer().sqrt();
    if &(&sn * &sn) != x.numer() {
        return None;
    }
    let sd = x.denom().sqrt();
    if &(&sd * &sd) != x.denom() {
        return None;
    }
    Some(Rational::new(sn, sd))
}

/// Decimal rendering with exactly `digits` fractional digits, rounding
/// half away from zero. Used for numeric root output only.
pub fn decimal_string(r: &Rational, digits: u32) -> String {
    let scale = Int::from(10).pow(digits);
    let scaled_num = r.numer() * &scale;
    let (mut q, rem) = num_integer::Integer::div_rem(&scaled_num, r.denom());
    if &rem.abs() * 2 >= *r.denom() {
        if scaled_num.is_negative() {
            q -= 1u32;
        } else {
            q += 1u32;
        }
    }
    let neg = q.is_negative();
    let digits_str = q.abs().to_string();
    let digits_str = if digits_str.len() <= digits as usize {
        format!("{}{}", "0".repeat(digits as usize + 1 - digits_str.len()), digits_str)
    } else {
        digits_str
    };
    let split = digits_str.len() - digits as usize;
    let (int_part, frac_part) = digits_str.split_at(split);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}
