//! Rigorous arithmetic foundation.
//!
//! Three value kinds cover everything the rest of the crate needs:
//! arbitrary-precision [`Rational`] numbers, algebraic values of the form
//! `sign * sqrt(q)` ([`SqrtRational`]), and outward-rounded [`Interval`]
//! enclosures with double endpoints.

mod interval;
mod sqrt_rational;

pub use interval::Interval;
pub use sqrt_rational::SqrtRational;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Zero};
use thiserror::Error;

/// Exact rational number in canonical form (maintained by `num-rational`).
pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericsError {
    #[error("malformed decimal literal {literal:?}: {reason}")]
    Parse { literal: String, reason: String },
    #[error("domain error in {op}: argument [{lo}, {hi}] outside the domain of {op}")]
    Domain { op: &'static str, lo: f64, hi: f64 },
}

/// Parses a signed decimal literal, optionally in scientific notation, into
/// the exact rational it denotes.
///
/// `"0.5"` gives `1/2`, `"1e-3"` gives `1/1000`; no rounding is performed.
pub fn rationalize(decimal_text: &str) -> Result<Rational, NumericsError> {
    let err = |reason: &str| NumericsError::Parse {
        literal: decimal_text.to_owned(),
        reason: reason.to_owned(),
    };
    let s = decimal_text.trim();
    if s.is_empty() {
        return Err(err("empty literal"));
    }
    let (sign, rest) = match s.as_bytes()[0] {
        b'+' => (Sign::Plus, &s[1..]),
        b'-' => (Sign::Minus, &s[1..]),
        _ => (Sign::Plus, s),
    };
    let (mantissa, exponent) = match rest.find(['e', 'E']) {
        Some(pos) => {
            let exp: i64 = rest[pos + 1..]
                .parse()
                .map_err(|_| err("invalid exponent"))?;
            (&rest[..pos], exp)
        }
        None => (rest, 0),
    };
    let (int_part, frac_part) = match mantissa.find('.') {
        Some(pos) => (&mantissa[..pos], &mantissa[pos + 1..]),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err("no digits"));
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(err("non-digit in mantissa"));
    }
    let digits: String = [int_part, frac_part].concat();
    let numer = BigInt::parse_bytes(digits.as_bytes(), 10).ok_or_else(|| err("no digits"))?;
    let numer = match sign {
        Sign::Minus => -numer,
        _ => numer,
    };
    // value = numer * 10^(exponent - frac_len)
    let shift = exponent - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let rational = if shift >= 0 {
        Rational::from_integer(numer * ten.pow(shift as u32))
    } else {
        Rational::new(numer, ten.pow((-shift) as u32))
    };
    Ok(rational)
}

/// Exact rational value of `1`, handy for the normalisation identities.
pub fn rational_one() -> Rational {
    Rational::one()
}

/// Exact rational value of `0`.
pub fn rational_zero() -> Rational {
    Rational::zero()
}
