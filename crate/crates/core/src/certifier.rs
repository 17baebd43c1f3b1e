//! Exact certification of lower bounds from decimal spherical-code files.
//!
//! A code file is a list of decimal coordinates. Each point is rationalized
//! exactly as printed and renormalized as `x~ = sqrt(a) * b` with `a` and
//! the vector `b` rational, so every pairwise inner product is a
//! [`SqrtRational`] and the maximal one, `t*`, is found by exact
//! comparison. The radius at which the code is a feasible kissing
//! configuration is then a one-step transcendental function of `t*`,
//! enclosed in an outward-rounded interval. Everything up to that last step
//! is exact integer arithmetic.

use crate::geom::{radius_of_max_cos, GeomError, Space};
use crate::numerics::{rationalize, Interval, NumericsError, Rational, SqrtRational};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CertifyError {
    #[error("{count} coordinates do not fill points of dimension {n} ({rem} left over)")]
    Shape { count: usize, n: usize, rem: usize },
    #[error("point {point}, coordinate {coord}: {source}")]
    BadCoordinate {
        point: usize,
        coord: usize,
        source: NumericsError,
    },
    #[error("point {index} is the zero vector and cannot be normalized")]
    DegeneratePoint { index: usize },
    #[error("a code needs at least two points, got {got}")]
    TooFewPoints { got: usize },
    #[error("points {i} and {j} coincide (inner product 1)")]
    DuplicatePoints { i: usize, j: usize },
    #[error("max inner product exceeds 1/2: the code is not a spherical kissing configuration at any radius")]
    NotSphericallyFeasible,
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// A code file as read: decimal literals grouped into points, kept verbatim
/// so that rationalization is exact with respect to the printed digits.
#[derive(Debug, Clone, PartialEq)]
pub struct RawCode {
    pub n: usize,
    pub points: Vec<Vec<String>>,
}

/// One exactly-normalized point `x~ = sqrt(a) * b`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactPoint {
    pub a: Rational,
    pub b: Vec<Rational>,
}

/// An exactly unit-normed code: `a_i * (b_i . b_i) = 1` for every point.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactCode {
    pub points: Vec<ExactPoint>,
}

/// Outcome of a certification request relative to the requested space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertStatus {
    /// The code is feasible exactly at the enclosed radius.
    Certified,
    /// `t* < 1/2`: the code already packs in the Euclidean reading, so the
    /// hyperbolic request is satisfied trivially at radius zero.
    FeasibleAtZero,
}

/// Exact certificate: the rational data is exact, the radius enclosure is
/// rigorous, and the record is self-contained for re-checking.
#[derive(Debug, Clone, PartialEq)]
pub struct CodeCertificate {
    pub space: Space,
    pub status: CertStatus,
    pub size: usize,
    /// `t*`, the exact maximal pairwise inner product.
    pub max_inner_product: SqrtRational,
    /// First pair (in lexicographic index order) attaining `t*`.
    pub argmax: (usize, usize),
    /// Minimal hyperbolic radius at which the code is feasible; present
    /// exactly when `t*` lies in `[1/2, 1)`.
    pub hyperbolic_min_radius: Option<Interval>,
    /// Maximal spherical radius at which the code is feasible; present
    /// exactly when `t* <= 1/2`.
    pub spherical_max_radius: Option<Interval>,
}

/// Splits whitespace-separated decimal literals into `count / n` points.
pub fn load_code(text: &str, n: usize) -> Result<RawCode, CertifyError> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let count = tokens.len();
    if n == 0 || count % n != 0 {
        return Err(CertifyError::Shape {
            count,
            n,
            rem: if n == 0 { count } else { count % n },
        });
    }
    Ok(RawCode {
        n,
        points: tokens
            .chunks(n)
            .map(|c| c.iter().map(|t| (*t).to_owned()).collect())
            .collect(),
    })
}

/// Rationalizes every coordinate exactly as printed and normalizes each
/// point as `x~ = sqrt(a) * b` with `a = 1 / (b . b)`.
pub fn exactify(raw: &RawCode) -> Result<ExactCode, CertifyError> {
    let mut points = Vec::with_capacity(raw.points.len());
    for (pi, coords) in raw.points.iter().enumerate() {
        let b: Vec<Rational> = coords
            .iter()
            .enumerate()
            .map(|(ci, lit)| {
                rationalize(lit).map_err(|source| CertifyError::BadCoordinate {
                    point: pi,
                    coord: ci,
                    source,
                })
            })
            .collect::<Result<_, _>>()?;
        let norm2: Rational = b.iter().map(|x| x * x).sum();
        if norm2.is_zero() {
            return Err(CertifyError::DegeneratePoint { index: pi });
        }
        points.push(ExactPoint {
            a: norm2.recip(),
            b,
        });
    }
    Ok(ExactCode { points })
}

/// Exact inner product `<x~_i, x~_j> = sqrt(a_i a_j) * (b_i . b_j)`.
fn inner_product(p: &ExactPoint, q: &ExactPoint) -> SqrtRational {
    let dot: Rational = p.b.iter().zip(q.b.iter()).map(|(x, y)| x * y).sum();
    let sign = if dot.is_zero() {
        0
    } else if dot.is_negative() {
        -1
    } else {
        1
    };
    SqrtRational::new(sign, &p.a * &q.a * &dot * &dot)
}

/// Certifies the code as a feasible kissing configuration, reporting the
/// exact `t*` of the rationalized code (never the radius advertised by the
/// source file) and the interval-enclosed radius derived from it.
pub fn certify(code: &ExactCode, space: Space) -> Result<CodeCertificate, CertifyError> {
    let k = code.points.len();
    if k < 2 {
        return Err(CertifyError::TooFewPoints { got: k });
    }

    // Pairwise products are independent; scan rows concurrently and keep
    // the first maximal pair in lexicographic index order.
    let best = (0..k - 1)
        .into_par_iter()
        .map(|i| {
            let mut row_best: Option<(SqrtRational, (usize, usize))> = None;
            for j in i + 1..k {
                let t = inner_product(&code.points[i], &code.points[j]);
                if row_best.as_ref().map_or(true, |(bt, _)| t > *bt) {
                    row_best = Some((t, (i, j)));
                }
            }
            row_best
        })
        .flatten()
        .reduce_with(|a, b| {
            // Strictly greater wins; on a tie the lexicographically earlier
            // pair does.
            if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                b
            } else {
                a
            }
        })
        .expect("k >= 2 gives at least one pair");
    let (t_star, argmax) = best;

    let one = SqrtRational::from_rational(&Rational::one());
    let half = SqrtRational::new(1, Rational::new(1.into(), 4.into()));
    if t_star >= one {
        return Err(CertifyError::DuplicatePoints {
            i: argmax.0,
            j: argmax.1,
        });
    }

    let hyperbolic_min_radius = if t_star >= half {
        Some(radius_of_max_cos(Space::Hyperbolic, &t_star)?)
    } else {
        None
    };
    let spherical_max_radius = if t_star <= half {
        Some(radius_of_max_cos(Space::Spherical, &t_star)?)
    } else {
        None
    };

    let status = match space {
        Space::Hyperbolic if t_star < half => CertStatus::FeasibleAtZero,
        Space::Spherical if t_star > half => return Err(CertifyError::NotSphericallyFeasible),
        Space::Euclidean => {
            return Err(GeomError::OutOfValidity {
                r: 0.0,
                lo: 0.0,
                hi: 0.0,
                hint: "certification targets a hyperbolic or spherical radius",
            }
            .into())
        }
        _ => CertStatus::Certified,
    };

    Ok(CodeCertificate {
        space,
        status,
        size: k,
        max_inner_product: t_star,
        argmax,
        hyperbolic_min_radius,
        spherical_max_radius,
    })
}

/// `%a`-style hexadecimal rendering of a double, exact to the last bit.
pub fn hex_float(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0x0p+0" } else { "0x0p+0" }.to_owned();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let bits = x.to_bits();
    let sign = if bits >> 63 == 1 { "-" } else { "" };
    let raw_exp = ((bits >> 52) & 0x7ff) as i64;
    let mantissa = bits & ((1u64 << 52) - 1);
    let (lead, exp, frac) = if raw_exp == 0 {
        // Subnormal: no implicit leading bit.
        ("0", -1022, mantissa)
    } else {
        ("1", raw_exp - 1023, mantissa)
    };
    let mut digits = format!("{frac:013x}");
    while digits.ends_with('0') && !digits.is_empty() {
        digits.pop();
    }
    if digits.is_empty() {
        format!("{sign}0x{lead}p{exp:+}")
    } else {
        format!("{sign}0x{lead}.{digits}p{exp:+}")
    }
}

impl CodeCertificate {
    /// Serializes the certificate as a `key: value` document. Interval
    /// endpoints are given in full hexadecimal precision alongside a
    /// decimal rendering.
    pub fn to_document(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "space: {}", self.space);
        let _ = writeln!(
            out,
            "status: {}",
            match self.status {
                CertStatus::Certified => "certified",
                CertStatus::FeasibleAtZero => "feasible-at-zero",
            }
        );
        let _ = writeln!(out, "size: {}", self.size);
        let t = &self.max_inner_product;
        let _ = writeln!(out, "max_inner_product_sign: {:+}", t.sign());
        let _ = writeln!(
            out,
            "max_inner_product_square: {}/{}",
            t.square().numer(),
            t.square().denom()
        );
        let _ = writeln!(out, "argmax_pair: {} {}", self.argmax.0, self.argmax.1);
        let mut radius = |key: &str, r: &Option<Interval>| {
            if let Some(r) = r {
                let _ = writeln!(out, "{key}_hex: [{}, {}]", hex_float(r.lo()), hex_float(r.hi()));
                let _ = writeln!(out, "{key}: [{:.17}, {:.17}]", r.lo(), r.hi());
            }
        };
        radius("hyperbolic_min_radius", &self.hyperbolic_min_radius);
        radius("spherical_max_radius", &self.spherical_max_radius);
        out
    }
}
