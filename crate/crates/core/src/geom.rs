//! Closed-form bounds on the kissing function and the radius/angle
//! conversions that connect sphere radii to spherical-code inner products.

use crate::numerics::{Interval, NumericsError, SqrtRational};
use crate::special::{beta, incomplete_beta, SpecialError};
use num_traits::One;
use std::fmt;
use thiserror::Error;

/// Ambient geometry. Euclidean admits no radius parameter; it coincides with
/// the hyperbolic case at `r = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    Hyperbolic,
    Spherical,
    Euclidean,
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Hyperbolic => write!(f, "H"),
            Space::Spherical => write!(f, "S"),
            Space::Euclidean => write!(f, "E"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundQuery {
    pub space: Space,
    pub n: u32,
    pub r: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Upper,
    Lower,
    Exact,
    Asymptotic,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Direction::Upper => "upper",
            Direction::Lower => "lower",
            Direction::Exact => "exact",
            Direction::Asymptotic => "asymptotic",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Geometric,
    Sdp,
    Construction,
    Reference,
    Limiting,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::Geometric => "geometric",
            Method::Sdp => "sdp",
            Method::Construction => "construction",
            Method::Reference => "reference",
            Method::Limiting => "limiting",
        };
        write!(f, "{s}")
    }
}

/// A bound value together with everything needed to interpret it honestly.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub query: BoundQuery,
    pub value: f64,
    pub direction: Direction,
    pub method: Method,
    /// True only when the value was produced by exact or interval-certified
    /// arithmetic; plain double evaluation reports `false`.
    pub rigorous: bool,
}

/// Cosine of the minimal angular separation forced by tangent radius-`r`
/// spheres, together with the angle itself.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleConversion {
    pub cos_theta: f64,
    pub theta: f64,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("dimension must be at least 2, got {0}")]
    DimensionTooSmall(u32),
    #[error("radius must be non-negative, got {0}")]
    NegativeRadius(f64),
    #[error("spherical radius r = {0} is degenerate: cos(2r) = -1 leaves no code constraint; use the limiting values")]
    DegenerateSphericalRadius(f64),
    #[error("radius {r} outside the validity window [{lo}, {hi}]; {hint}")]
    OutOfValidity {
        r: f64,
        lo: f64,
        hi: f64,
        hint: &'static str,
    },
    #[error("max cosine {value} outside the admissible interval [{lo}, {hi}) for this space")]
    CosOutOfRange { value: f64, lo: f64, hi: f64 },
    #[error("no packing density known for dimension {0}; supported n: 2, 3, 4, 9, 25")]
    UnsupportedDensityDimension(u32),
    #[error(transparent)]
    Special(#[from] SpecialError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Best sphere-packing densities of Euclidean space in the dimensions where
/// they are known exactly.
pub fn packing_density(m: u32) -> Option<f64> {
    use std::f64::consts::PI;
    match m {
        1 => Some(1.0),
        2 => Some(PI / 12.0_f64.sqrt()),
        3 => Some(PI / 18.0_f64.sqrt()),
        8 => Some(PI.powi(4) / 384.0),
        24 => Some(PI.powi(12) / 479_001_600.0),
        _ => None,
    }
}

fn check_query(n: u32, r: f64) -> Result<(), GeomError> {
    if n < 2 {
        return Err(GeomError::DimensionTooSmall(n));
    }
    if r < 0.0 {
        return Err(GeomError::NegativeRadius(r));
    }
    Ok(())
}

/// Minimal-separation cosine of a kissing configuration of radius-`r`
/// spheres: `1 - 1/(1 + cosh 2r)` in hyperbolic space, `1 - 1/(1 + cos 2r)`
/// in spherical space, `1/2` in the Euclidean limit.
pub fn cos_theta_of_radius(space: Space, r: f64) -> Result<AngleConversion, GeomError> {
    if r < 0.0 {
        return Err(GeomError::NegativeRadius(r));
    }
    let cos_theta = match space {
        Space::Hyperbolic => 1.0 - 1.0 / (1.0 + (2.0 * r).cosh()),
        Space::Spherical => {
            let c = (2.0 * r).cos();
            if 1.0 + c <= 0.0 {
                return Err(GeomError::DegenerateSphericalRadius(r));
            }
            1.0 - 1.0 / (1.0 + c)
        }
        Space::Euclidean => 0.5,
    };
    Ok(AngleConversion {
        cos_theta,
        theta: cos_theta.clamp(-1.0, 1.0).acos(),
    })
}

/// Inverts the radius/cosine conversion for an exact max cosine `t`:
/// `r = arccosh(t/(1-t)) / 2` (hyperbolic), `r = arccos(t/(1-t)) / 2`
/// (spherical). Returns a rigorous enclosure.
pub fn radius_of_max_cos(space: Space, t: &SqrtRational) -> Result<Interval, GeomError> {
    let one = SqrtRational::from_rational(&crate::numerics::Rational::one());
    let half = SqrtRational::new(
        1,
        crate::numerics::Rational::new(1.into(), 4.into()), // sqrt(1/4) = 1/2
    );
    let ti = t.to_interval();
    let out_of_range = |lo: f64, hi: f64| GeomError::CosOutOfRange {
        value: ti.midpoint(),
        lo,
        hi,
    };
    match space {
        Space::Hyperbolic => {
            if t < &half || t >= &one {
                return Err(out_of_range(0.5, 1.0));
            }
        }
        Space::Spherical => {
            if t > &half {
                return Err(out_of_range(-1.0, 0.5));
            }
        }
        Space::Euclidean => {
            return Err(GeomError::OutOfValidity {
                r: 0.0,
                lo: 0.0,
                hi: 0.0,
                hint: "the Euclidean case has no radius parameter",
            })
        }
    }
    let denom = Interval::point(1.0).sub(&ti);
    let c = ti.div(&denom)?;
    let r = match space {
        Space::Hyperbolic => c.acosh()?.halved(),
        Space::Spherical => c.acos()?.halved(),
        Space::Euclidean => unreachable!(),
    };
    Ok(r)
}

fn beta_ratio(n: u32, x: f64) -> Result<f64, GeomError> {
    let y = (n as f64 - 1.0) / 2.0;
    let full = beta(y, 0.5)?;
    let part = incomplete_beta(x.clamp(0.0, 1.0), y, 0.5)?;
    Ok(2.0 * full / part)
}

/// Geometric upper bound in hyperbolic space:
/// `2 B((n-1)/2, 1/2) / B(sech^2 r / 4; (n-1)/2, 1/2)`.
pub fn upper_bound_hyp(n: u32, r: f64) -> Result<BoundReport, GeomError> {
    check_query(n, r)?;
    let s = 1.0 / r.cosh();
    let value = beta_ratio(n, s * s / 4.0)?;
    Ok(BoundReport {
        query: BoundQuery {
            space: Space::Hyperbolic,
            n,
            r,
        },
        value,
        direction: Direction::Upper,
        method: Method::Geometric,
        rigorous: false,
    })
}

/// Geometric lower bound in hyperbolic space:
/// `2 B((n-1)/2, 1/2) / B(sech^2 r - sech^4 r / 4; (n-1)/2, 1/2)`.
pub fn lower_bound_hyp(n: u32, r: f64) -> Result<BoundReport, GeomError> {
    check_query(n, r)?;
    let s2 = 1.0 / (r.cosh() * r.cosh());
    let value = beta_ratio(n, s2 - s2 * s2 / 4.0)?;
    Ok(BoundReport {
        query: BoundQuery {
            space: Space::Hyperbolic,
            n,
            r,
        },
        value,
        direction: Direction::Lower,
        method: Method::Geometric,
        rigorous: false,
    })
}

const PI_OVER_3: f64 = std::f64::consts::FRAC_PI_3;

/// Geometric upper bound in spherical space, valid for `0 <= r <= pi/3`:
/// `2 B((n-1)/2, 1/2) / B(sec^2 r / 4; (n-1)/2, 1/2)`.
pub fn upper_bound_sph(n: u32, r: f64) -> Result<BoundReport, GeomError> {
    check_query(n, r)?;
    if r > PI_OVER_3 {
        return Err(GeomError::OutOfValidity {
            r,
            lo: 0.0,
            hi: PI_OVER_3,
            hint: "use limiting_kappa_sph for r > pi/3",
        });
    }
    let c = 1.0 / r.cos();
    let value = beta_ratio(n, (c * c / 4.0).min(1.0))?;
    Ok(BoundReport {
        query: BoundQuery {
            space: Space::Spherical,
            n,
            r,
        },
        value,
        direction: Direction::Upper,
        method: Method::Geometric,
        rigorous: false,
    })
}

/// Geometric lower bound in spherical space, valid for `0 <= r <= pi/3`.
/// Piecewise at `r = pi/4` because the doubled covering cap crosses a
/// hemisphere there.
pub fn lower_bound_sph(n: u32, r: f64) -> Result<BoundReport, GeomError> {
    check_query(n, r)?;
    if r > PI_OVER_3 {
        return Err(GeomError::OutOfValidity {
            r,
            lo: 0.0,
            hi: PI_OVER_3,
            hint: "use limiting_kappa_sph for r > pi/3",
        });
    }
    let y = (n as f64 - 1.0) / 2.0;
    let full = beta(y, 0.5)?;
    let sec2 = 1.0 / (r.cos() * r.cos());
    let x = (sec2 - sec2 * sec2 / 4.0).clamp(0.0, 1.0);
    let part = incomplete_beta(x, y, 0.5)?;
    let value = if r <= std::f64::consts::FRAC_PI_4 {
        2.0 * full / part
    } else {
        2.0 * full / (2.0 * full - part)
    };
    Ok(BoundReport {
        query: BoundQuery {
            space: Space::Spherical,
            n,
            r,
        },
        value,
        direction: Direction::Lower,
        method: Method::Geometric,
        rigorous: false,
    })
}

/// Exact values of the spherical kissing function past its formula window:
/// one sphere fits for `pi/3 < r <= pi/2`, none past the hemisphere.
pub fn limiting_kappa_sph(n: u32, r: f64) -> Result<BoundReport, GeomError> {
    if n < 2 {
        return Err(GeomError::DimensionTooSmall(n));
    }
    if r <= PI_OVER_3 || r > std::f64::consts::PI {
        return Err(GeomError::OutOfValidity {
            r,
            lo: PI_OVER_3,
            hi: std::f64::consts::PI,
            hint: "limiting values apply only on (pi/3, pi]",
        });
    }
    let value = if r <= std::f64::consts::FRAC_PI_2 {
        1.0
    } else {
        0.0
    };
    Ok(BoundReport {
        query: BoundQuery {
            space: Space::Spherical,
            n,
            r,
        },
        value,
        direction: Direction::Exact,
        method: Method::Limiting,
        rigorous: true,
    })
}

/// Euclidean kissing-number bounds `(lower, upper)` from the `r = 0` limit.
pub fn euclidean_bounds(n: u32) -> Result<(BoundReport, BoundReport), GeomError> {
    check_query(n, 0.0)?;
    let query = BoundQuery {
        space: Space::Euclidean,
        n,
        r: 0.0,
    };
    let lower = BoundReport {
        query,
        value: beta_ratio(n, 0.75)?,
        direction: Direction::Lower,
        method: Method::Geometric,
        rigorous: false,
    };
    let upper = BoundReport {
        query,
        value: beta_ratio(n, 0.25)?,
        direction: Direction::Upper,
        method: Method::Geometric,
        rigorous: false,
    };
    Ok((lower, upper))
}

/// Large-radius asymptote of the hyperbolic kissing function:
/// `(n-1) d_{n-1} B((n-1)/2, 1/2) e^{(n-1) r}`, available where the packing
/// density `d_{n-1}` is known exactly.
pub fn asymptotic_hyp(n: u32, r: f64) -> Result<f64, GeomError> {
    check_query(n, r.max(0.0))?;
    let m = n - 1;
    let d = packing_density(m).ok_or(GeomError::UnsupportedDensityDimension(n))?;
    let b = beta((n as f64 - 1.0) / 2.0, 0.5)?;
    Ok(m as f64 * d * b * ((n as f64 - 1.0) * r).exp())
}
