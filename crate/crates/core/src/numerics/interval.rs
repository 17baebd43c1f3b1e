use super::{NumericsError, Rational};
use num_traits::ToPrimitive;
use std::fmt;

/// Closed interval with `f64` endpoints.
///
/// Every operation returns an enclosure of the exact image of its input
/// enclosures: the basic arithmetic operations are correctly rounded by the
/// hardware and get a one-ulp outward nudge, elementary functions are
/// evaluated at the monotone endpoints and padded outward by two ulps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

fn down(x: f64) -> f64 {
    if x.is_infinite() {
        x
    } else {
        x.next_down()
    }
}

fn up(x: f64) -> f64 {
    if x.is_infinite() {
        x
    } else {
        x.next_up()
    }
}

fn down2(x: f64) -> f64 {
    down(down(x))
}

fn up2(x: f64) -> f64 {
    up(up(x))
}

/// Exact rounding error of `s = fl(a + b)` (2Sum).
fn add_err(a: f64, b: f64, s: f64) -> f64 {
    let bb = s - a;
    (a - (s - bb)) + (b - bb)
}

/// Lower bound for `a + b`: nudge only when the float sum rounded up.
fn add_lo(a: f64, b: f64) -> f64 {
    let s = a + b;
    if s.is_finite() && add_err(a, b, s) < 0.0 {
        down(s)
    } else {
        s
    }
}

fn add_hi(a: f64, b: f64) -> f64 {
    let s = a + b;
    if s.is_finite() && add_err(a, b, s) > 0.0 {
        up(s)
    } else {
        s
    }
}

/// Lower bound for `a * b`, using the FMA residual for the exact error sign.
fn mul_lo(a: f64, b: f64) -> f64 {
    let p = a * b;
    if p.is_finite() && a.mul_add(b, -p) < 0.0 {
        down(p)
    } else {
        p
    }
}

fn mul_hi(a: f64, b: f64) -> f64 {
    let p = a * b;
    if p.is_finite() && a.mul_add(b, -p) > 0.0 {
        up(p)
    } else {
        p
    }
}

/// Lower bound for `a / b` (`b` nonzero): the FMA residual `qb - a` has the
/// sign of `q - a/b` when divided by `b`.
fn div_lo(a: f64, b: f64) -> f64 {
    let q = a / b;
    if q.is_finite() {
        let r = q.mul_add(b, -a);
        if r != 0.0 && (r > 0.0) == (b > 0.0) {
            return down(q);
        }
    }
    q
}

fn div_hi(a: f64, b: f64) -> f64 {
    let q = a / b;
    if q.is_finite() {
        let r = q.mul_add(b, -a);
        if r != 0.0 && (r > 0.0) != (b > 0.0) {
            return up(q);
        }
    }
    q
}

impl Interval {
    /// Enclosure of pi; the f64 constant rounds down, its successor is above.
    pub const PI: Interval = Interval {
        lo: std::f64::consts::PI,
        hi: f64::from_bits(0x400921FB54442D19),
    };

    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "invalid interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Widens both endpoints outward by `eps`; the result is still an
    /// enclosure of anything the original enclosed.
    pub fn widened(&self, eps: f64) -> Self {
        Interval {
            lo: down(self.lo - eps),
            hi: up(self.hi + eps),
        }
    }

    /// Tight enclosure of an exact rational, verified by exact comparison.
    pub fn from_rational(x: &Rational) -> Self {
        let approx = x.to_f64().unwrap_or(f64::NAN);
        if approx.is_nan() {
            return Interval {
                lo: f64::NEG_INFINITY,
                hi: f64::INFINITY,
            };
        }
        // A representable value stays a point; otherwise to_f64 is nearly
        // correctly rounded and a couple of nudges settle each side.
        let (mut lo, mut hi) = if approx.is_finite() && &Rational::from_float(approx).unwrap() == x
        {
            (approx, approx)
        } else {
            (down(approx), up(approx))
        };
        for _ in 0..64 {
            if f64_le_rational(lo, x) {
                break;
            }
            lo = down(lo);
        }
        for _ in 0..64 {
            if rational_le_f64(x, hi) {
                break;
            }
            hi = up(hi);
        }
        debug_assert!(f64_le_rational(lo, x) && rational_le_f64(x, hi));
        Interval { lo, hi }
    }

    pub fn neg(&self) -> Self {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }

    pub fn add(&self, rhs: &Interval) -> Self {
        Interval {
            lo: add_lo(self.lo, rhs.lo),
            hi: add_hi(self.hi, rhs.hi),
        }
    }

    pub fn sub(&self, rhs: &Interval) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Interval) -> Self {
        let pairs = [
            (self.lo, rhs.lo),
            (self.lo, rhs.hi),
            (self.hi, rhs.lo),
            (self.hi, rhs.hi),
        ];
        if pairs.iter().any(|(a, b)| (a * b).is_nan()) {
            return Interval {
                lo: f64::NEG_INFINITY,
                hi: f64::INFINITY,
            };
        }
        let lo = pairs
            .iter()
            .map(|(a, b)| mul_lo(*a, *b))
            .fold(f64::INFINITY, f64::min);
        let hi = pairs
            .iter()
            .map(|(a, b)| mul_hi(*a, *b))
            .fold(f64::NEG_INFINITY, f64::max);
        Interval { lo, hi }
    }

    pub fn div(&self, rhs: &Interval) -> Result<Self, NumericsError> {
        if rhs.lo <= 0.0 && rhs.hi >= 0.0 {
            return Err(NumericsError::Domain {
                op: "div",
                lo: rhs.lo,
                hi: rhs.hi,
            });
        }
        let pairs = [
            (self.lo, rhs.lo),
            (self.lo, rhs.hi),
            (self.hi, rhs.lo),
            (self.hi, rhs.hi),
        ];
        let lo = pairs
            .iter()
            .map(|(a, b)| div_lo(*a, *b))
            .fold(f64::INFINITY, f64::min);
        let hi = pairs
            .iter()
            .map(|(a, b)| div_hi(*a, *b))
            .fold(f64::NEG_INFINITY, f64::max);
        Ok(Interval { lo, hi })
    }

    pub fn recip(&self) -> Result<Self, NumericsError> {
        Interval::point(1.0).div(self)
    }

    pub fn sqrt(&self) -> Result<Self, NumericsError> {
        if self.lo < 0.0 {
            return Err(NumericsError::Domain {
                op: "sqrt",
                lo: self.lo,
                hi: self.hi,
            });
        }
        // IEEE sqrt is correctly rounded; the FMA residual tells whether the
        // result is exact, in which case no nudge is needed.
        let sqrt_dir = |x: f64, want_lo: bool| -> f64 {
            let r = x.sqrt();
            let resid = r.mul_add(r, -x); // sign of r^2 - x
            if resid == 0.0 {
                r
            } else if want_lo {
                if resid > 0.0 {
                    down(r)
                } else {
                    r
                }
            } else if resid < 0.0 {
                up(r)
            } else {
                r
            }
        };
        Ok(Interval {
            lo: sqrt_dir(self.lo, true).max(0.0),
            hi: sqrt_dir(self.hi, false),
        })
    }

    pub fn exp(&self) -> Self {
        Interval {
            lo: down2(self.lo.exp()).max(0.0),
            hi: up2(self.hi.exp()),
        }
    }

    pub fn cosh(&self) -> Self {
        // cosh decreases on the negative axis and increases on the positive one.
        let m = self.lo.abs().max(self.hi.abs());
        let lo = if self.lo <= 0.0 && self.hi >= 0.0 {
            1.0
        } else {
            down2(self.lo.abs().min(self.hi.abs()).cosh()).max(1.0)
        };
        Interval {
            lo,
            hi: up2(m.cosh()),
        }
    }

    pub fn sech(&self) -> Self {
        // cosh >= 1, so the reciprocal never divides by zero.
        self.cosh().recip().expect("cosh is bounded away from zero")
    }

    pub fn cos(&self) -> Self {
        if self.width() >= 2.0 * std::f64::consts::PI {
            return Interval { lo: -1.0, hi: 1.0 };
        }
        // Critical points are the integer multiples of pi. Scan the few that
        // can intersect [lo, hi] using the pi enclosure conservatively.
        let mut lo = down2(self.lo.cos()).min(down2(self.hi.cos())).max(-1.0);
        let mut hi = up2(self.lo.cos()).max(up2(self.hi.cos())).min(1.0);
        let k_min = (self.lo / Interval::PI.hi).floor() as i64 - 1;
        let k_max = (self.hi / Interval::PI.lo).ceil() as i64 + 1;
        for k in k_min..=k_max {
            let kpi = Interval::PI.mul(&Interval::point(k as f64));
            if kpi.intersects(self) {
                if k % 2 == 0 {
                    hi = 1.0;
                } else {
                    lo = -1.0;
                }
            }
        }
        Interval { lo, hi }
    }

    pub fn sin(&self) -> Self {
        // sin(x) = cos(pi/2 - x), with an exactly halved pi enclosure.
        let half_pi = Interval {
            lo: Interval::PI.lo / 2.0,
            hi: Interval::PI.hi / 2.0,
        };
        half_pi.sub(self).cos()
    }

    pub fn sec(&self) -> Result<Self, NumericsError> {
        self.cos().recip().map_err(|_| NumericsError::Domain {
            op: "sec",
            lo: self.lo,
            hi: self.hi,
        })
    }

    pub fn acos(&self) -> Result<Self, NumericsError> {
        if self.hi < -1.0 || self.lo > 1.0 {
            return Err(NumericsError::Domain {
                op: "acos",
                lo: self.lo,
                hi: self.hi,
            });
        }
        // Clamp endpoint overhang from rounding; acos is decreasing.
        let a = self.lo.max(-1.0);
        let b = self.hi.min(1.0);
        Ok(Interval {
            lo: down2(b.acos()).max(0.0),
            hi: up2(a.acos()).min(Interval::PI.hi),
        })
    }

    pub fn asin(&self) -> Result<Self, NumericsError> {
        if self.hi < -1.0 || self.lo > 1.0 {
            return Err(NumericsError::Domain {
                op: "asin",
                lo: self.lo,
                hi: self.hi,
            });
        }
        let half_pi = Interval {
            lo: Interval::PI.lo / 2.0,
            hi: Interval::PI.hi / 2.0,
        };
        Ok(half_pi.sub(&self.acos()?))
    }

    pub fn acosh(&self) -> Result<Self, NumericsError> {
        if self.hi < 1.0 {
            return Err(NumericsError::Domain {
                op: "acosh",
                lo: self.lo,
                hi: self.hi,
            });
        }
        let a = self.lo.max(1.0);
        Ok(Interval {
            lo: down2(a.acosh()).max(0.0),
            hi: up2(self.hi.acosh()),
        })
    }

    /// Exact halving; a power of two never rounds.
    pub fn halved(&self) -> Self {
        Interval {
            lo: self.lo / 2.0,
            hi: self.hi / 2.0,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.17e}, {:.17e}]", self.lo, self.hi)
    }
}

fn f64_le_rational(f: f64, x: &Rational) -> bool {
    if f == f64::NEG_INFINITY {
        return true;
    }
    if f == f64::INFINITY {
        return false;
    }
    match Rational::from_float(f) {
        Some(r) => r <= *x,
        None => false,
    }
}

fn rational_le_f64(x: &Rational, f: f64) -> bool {
    if f == f64::INFINITY {
        return true;
    }
    if f == f64::NEG_INFINITY {
        return false;
    }
    match Rational::from_float(f) {
        Some(r) => *x <= r,
        None => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn sqrt_of_one_is_one() {
        let one = Interval::point(1.0);
        let r = one.sqrt().unwrap();
        assert_eq!((r.lo(), r.hi()), (1.0, 1.0));
    }

    #[test]
    fn cosh_of_zero_is_one() {
        let z = Interval::point(0.0);
        let r = z.cosh();
        assert_eq!(r.lo(), 1.0);
        assert!(r.hi() >= 1.0 && r.width() < 1e-15);
    }

    #[test]
    fn acos_of_golden_cosine_encloses_pi_over_five() {
        // arccos((sqrt(5)+1)/4) = pi/5; feed in a width-1e-15 enclosure.
        let c = (5.0_f64.sqrt() + 1.0) / 4.0;
        let x = Interval::new(c - 5e-16, c + 5e-16);
        let r = x.acos().unwrap();
        let pi_over_5 = std::f64::consts::PI / 5.0;
        assert!(r.contains(pi_over_5));
        assert!(r.width() <= 1e-12, "width {}", r.width());
    }

    #[test]
    fn from_rational_encloses_exact_value() {
        let third = Rational::new(BigInt::from(1), BigInt::from(3));
        let i = Interval::from_rational(&third);
        assert!(f64_le_rational(i.lo(), &third));
        assert!(rational_le_f64(&third, i.hi()));
        assert!(i.width() < 1e-15);
    }

    #[test]
    fn cos_covers_extrema() {
        let i = Interval::new(3.0, 3.3); // contains pi
        let r = i.cos();
        assert_eq!(r.lo(), -1.0);
        let j = Interval::new(-0.1, 0.1); // contains 0
        assert_eq!(j.cos().hi(), 1.0);
    }

    #[test]
    fn division_by_zero_straddling_interval_fails() {
        let a = Interval::point(1.0);
        let b = Interval::new(-1.0, 1.0);
        assert!(a.div(&b).is_err());
    }

    #[test]
    fn pi_enclosure_is_tight() {
        assert!(Interval::PI.width() <= 2.0 * f64::EPSILON);
        assert!(Interval::PI.lo < Interval::PI.hi);
    }
}
