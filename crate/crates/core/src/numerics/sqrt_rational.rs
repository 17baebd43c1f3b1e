use super::{Interval, Rational};
use num_traits::{Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Algebraic value of the form `sign * sqrt(square)` with `square` a
/// non-negative exact rational.
///
/// This is the only algebraic-number kind the crate needs: the certifier
/// produces inner products `sqrt(a_i a_j) * (b_i . b_j)`, which it stores as
/// the sign of the rational factor together with the exact square
/// `a_i a_j (b_i . b_j)^2`. Nested radicals are rejected by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SqrtRational {
    sign: i8,
    square: Rational,
}

impl SqrtRational {
    /// Builds `sign * sqrt(square)`. A zero square forces a zero sign and
    /// vice versa; a negative square is a caller bug.
    pub fn new(sign: i8, square: Rational) -> Self {
        assert!(!square.is_negative(), "square must be non-negative");
        assert!((-1..=1).contains(&sign));
        if square.is_zero() || sign == 0 {
            SqrtRational {
                sign: 0,
                square: Rational::zero(),
            }
        } else {
            SqrtRational { sign, square }
        }
    }

    pub fn zero() -> Self {
        SqrtRational {
            sign: 0,
            square: Rational::zero(),
        }
    }

    /// Embeds an exact rational `r` as `sign(r) * sqrt(r^2)`.
    pub fn from_rational(r: &Rational) -> Self {
        let sign = if r.is_zero() {
            0
        } else if r.is_negative() {
            -1
        } else {
            1
        };
        SqrtRational::new(sign, r * r)
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn square(&self) -> &Rational {
        &self.square
    }

    /// Outward-rounded enclosure of the value.
    pub fn to_interval(&self) -> Interval {
        let root = Interval::from_rational(&self.square)
            .sqrt()
            .expect("square is non-negative");
        match self.sign {
            0 => Interval::point(0.0),
            1 => root,
            _ => root.neg(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_interval().midpoint()
    }
}

/// Exact order of two values, decided by sign comparison first and then by
/// comparison of the squares; no floating arithmetic is involved.
impl Ord for SqrtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.sign.cmp(&other.sign) {
            Ordering::Equal => {}
            ord => return ord,
        }
        match self.sign {
            0 => Ordering::Equal,
            1 => self.square.cmp(&other.square),
            _ => other.square.cmp(&self.square),
        }
    }
}

impl PartialOrd for SqrtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SqrtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            0 => write!(f, "0"),
            1 => write!(f, "sqrt({})", self.square),
            _ => write!(f, "-sqrt({})", self.square),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn compare_by_squares() {
        let a = SqrtRational::new(1, q(1, 5));
        let b = SqrtRational::new(1, q(1, 4));
        assert_eq!(a.cmp(&b), Ordering::Less); // 1/sqrt(5) < 1/2
    }

    #[test]
    fn compare_by_sign() {
        let neg = SqrtRational::new(-1, q(1, 1));
        assert_eq!(neg.cmp(&SqrtRational::zero()), Ordering::Less);
    }

    #[test]
    fn equal_values_compare_equal() {
        let a = SqrtRational::new(1, q(9, 4));
        let b = SqrtRational::new(1, q(9, 4));
        assert_eq!(a.cmp(&b), Ordering::Equal);
    }

    #[test]
    fn negative_order_flips() {
        let a = SqrtRational::new(-1, q(4, 1)); // -2
        let b = SqrtRational::new(-1, q(1, 1)); // -1
        assert_eq!(a.cmp(&b), Ordering::Less);
    }

    #[test]
    fn interval_enclosure_contains_value() {
        let a = SqrtRational::new(1, q(1, 5));
        let i = a.to_interval();
        assert!(i.contains(1.0 / 5.0_f64.sqrt()));
        assert!(i.width() < 1e-15);
    }
}
