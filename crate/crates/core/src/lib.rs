//! Bounds on the kissing function in hyperbolic and spherical space.
//!
//! The crate is organised in layers:
//!
//! * [`numerics`] — exact rationals, algebraic values of the form `sign * sqrt(q)`,
//!   and interval arithmetic with outward rounding;
//! * [`special`] — beta and incomplete beta functions;
//! * [`geom`] — closed-form geometric upper/lower bounds and radius/angle conversions;
//! * [`orthopoly`] — exact-rational Jacobi polynomials and the symmetrised
//!   trivariate matrix kernels used by the three-point bound;
//! * [`sdp`] — assembly, solving, verification and text export of the
//!   three-point semidefinite program;
//! * [`certifier`] — exact certification of spherical-code lower bounds;
//! * [`reference`] — published reference values and the jump radii of the
//!   three-dimensional spherical kissing function.

pub mod certifier;
pub mod geom;
pub mod numerics;
pub mod orthopoly;
pub mod reference;
pub mod sdp;
pub mod special;

pub use geom::{BoundQuery, BoundReport, Space};
pub use numerics::{Interval, Rational, SqrtRational};
