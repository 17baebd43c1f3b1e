//! Published table data and the closed-form jump radii.
//!
//! The bound columns due to Levenshtein and Coxeter, the tabulated SDP
//! values, and the construction sizes are embedded verbatim as reference
//! data; their formulas are not implemented here. The Table 3 jump radii of
//! `kappa_S(3, r)`, by contrast, are recomputed from their closed forms as
//! rigorous enclosures.

use crate::numerics::{Interval, Rational};
use num_bigint::BigInt;
use num_traits::Signed;

/// Which published table a row belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableId {
    /// Bounds in the hyperbolic space H^3.
    H3,
    /// Bounds in the hyperbolic space H^4.
    H4,
    /// Jumps of kappa_S(3, r).
    S3,
    /// Bounds in the sphere S^4.
    S4,
}

/// One published row, transcribed verbatim. `coxeter` is absent exactly
/// where the source prints an asterisk (the Schlaefli-function bound needs
/// enough spheres for a regular simplex and fails for large radii).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceRow {
    pub table: TableId,
    /// Radius exactly as printed.
    pub r_text: &'static str,
    pub r: f64,
    /// Printed theoretical lower bound (the column our geometric bound is
    /// checked against).
    pub theoretical_lower: f64,
    /// Lower bound by construction (a concrete code of this size exists).
    pub construction_lower: u32,
    /// Published SDP upper bound.
    pub sdp_paper: f64,
    pub levenshtein: f64,
    pub coxeter: Option<f64>,
}

const fn row(
    table: TableId,
    r_text: &'static str,
    r: f64,
    theoretical_lower: f64,
    construction_lower: u32,
    sdp_paper: f64,
    levenshtein: f64,
    coxeter: Option<f64>,
) -> ReferenceRow {
    ReferenceRow {
        table,
        r_text,
        r,
        theoretical_lower,
        construction_lower,
        sdp_paper,
        levenshtein,
        coxeter,
    }
}

/// Bounds for the kissing number in H^3.
pub const TABLE_H3: &[ReferenceRow] = &[
    row(TableId::H3, "0", 0.0, 4.0, 12, 12.368591, 13.2857, Some(13.3973)),
    row(TableId::H3, "0.3007680932244", 0.3007680932244, 4.37289, 13, 13.66695, 14.6365, Some(14.7591)),
    row(TableId::H3, "0.3741678937820", 0.3741678937820, 4.58663, 14, 14.57930, 15.4829, Some(15.5389)),
    row(TableId::H3, "0.4603413898301", 0.4603413898301, 4.90925, 15, 15.76145, 16.6843, Some(16.7150)),
    row(TableId::H3, "0.5150988762761", 0.5150988762761, 5.15856, 16, 16.63748, 17.5619, Some(17.6233)),
    row(TableId::H3, "0.5575414271933", 0.5575414271933, 5.37771, 17, 17.39631, 18.3659, Some(18.4214)),
    row(TableId::H3, "0.6117193853329", 0.6117193853329, 5.69307, 18, 18.57836, 19.5957, Some(19.5694)),
    row(TableId::H3, "0.6752402229782", 0.6752402229782, 6.1184, 19, 20.12475, 21.1343, Some(21.1170)),
    row(TableId::H3, "0.6839781903772", 0.6839781903772, 6.18194, 20, 20.43374, 21.3570, Some(21.3482)),
    row(TableId::H3, "0.7441766799717", 0.7441766799717, 6.65554, 21, 21.88751, 23.0631, Some(23.0705)),
    row(TableId::H3, "0.7727858684533", 0.7727858684533, 6.90384, 22, 22.81495, 24.0041, Some(23.9732)),
    row(TableId::H3, "0.8064065300517", 0.8064065300517, 7.21623, 23, 24.08326, 25.2137, Some(25.1087)),
    row(TableId::H3, "0.8070321648835", 0.8070321648835, 7.22226, 24, 24.32215, 25.2348, Some(25.1306)),
];

/// Bounds for the kissing number in H^4.
pub const TABLE_H4: &[ReferenceRow] = &[
    row(TableId::H4, "0", 0.0, 5.11506, 24, 24.05691, 26.0, Some(26.4420)),
    row(TableId::H4, "0.2803065634764", 0.2803065634764, 5.70802, 25, 28.36959, 29.9154, Some(29.9757)),
    row(TableId::H4, "0.2937915284847", 0.2937915284847, 5.76935, 26, 28.54566, 30.2755, Some(30.3417)),
    row(TableId::H4, "0.3533981811745", 0.3533981811745, 6.08306, 27, 30.35228, 32.0432, Some(32.2152)),
    row(TableId::H4, "0.4029707622959", 0.4029707622959, 6.40115, 29, 32.37496, 33.8969, Some(34.1172)),
    row(TableId::H4, "0.4361470369242", 0.4361470369242, 6.64597, 30, 33.73058, 35.3805, Some(35.5826)),
];

/// Bounds for the kissing number in S^4 (including the continuation rows).
pub const TABLE_S4: &[ReferenceRow] = &[
    row(TableId::S4, "0", 0.0, 5.11506, 24, 24.056903, 26.0, Some(26.4420)),
    row(TableId::S4, "0.064960281031", 0.064960281031, 5.0847, 22, 24.25996, 25.8154, Some(26.2614)),
    row(TableId::S4, "0.135", 0.135, 4.98499, 21, 23.698995, 25.2181, Some(25.6681)),
    row(TableId::S4, "0.2348312007464", 0.2348312007464, 4.72978, 21, 22.343847, 23.7439, Some(24.1511)),
    row(TableId::S4, "0.315", 0.315, 4.43922, 20, 20.975086, 22.1389, Some(22.4263)),
    row(TableId::S4, "0.3478604258810", 0.3478604258810, 4.30116, 20, 20.418654, 21.3944, Some(21.6076)),
    row(TableId::S4, "0.3743605576995", 0.3743605576995, 4.18278, 18, 20.039183, 20.7611, Some(20.9061)),
    row(TableId::S4, "0.393", 0.393, 4.09608, 17, 19.493801, 20.2984, Some(20.3925)),
    row(TableId::S4, "0.3966966954949", 0.3966966954949, 4.07857, 17, 19.336889, 20.2050, Some(20.2888)),
    row(TableId::S4, "0.439", 0.439, 3.87137, 16, 17.528082, 18.7761, Some(19.0626)),
    row(TableId::S4, "0.44269036900123", 0.44269036900123, 3.85274, 16, 17.387671, 18.6476, Some(18.9525)),
    row(TableId::S4, "0.49", 0.49, 3.60742, 15, 15.92363, 17.0608, Some(17.5025)),
    row(TableId::S4, "0.49969620570817", 0.49969620570817, 3.55583, 15, 15.650850, 16.7492, Some(17.1977)),
    row(TableId::S4, "0.53", 0.53, 3.3923, 14, 14.877753, 15.8038, Some(16.2314)),
    row(TableId::S4, "0.54100885503509", 0.54100885503509, 3.33217, 14, 14.632380, 15.4706, Some(15.8766)),
    row(TableId::S4, "0.55183", 0.55183, 3.27277, 13, 14.402314, 15.1480, Some(15.5262)),
    row(TableId::S4, "0.55558271937072", 0.55558271937072, 3.2521, 13, 14.313536, 15.0373, Some(15.4043)),
    row(TableId::S4, "0.595", 0.595, 3.03363, 12, 12.970691, 13.8506, Some(14.1160)),
    row(TableId::S4, "0.61547970865277", 0.61547970865277, 2.91955, 12, 12.302214, 13.0000000007, Some(13.4436)),
    row(TableId::S4, "0.6299", 0.6299, 2.8392, 11, 11.902489, 12.4471, Some(12.9700)),
    row(TableId::S4, "0.63337378793619", 0.63337378793619, 2.81986, 11, 11.780786, 12.3190, Some(12.8560)),
    row(TableId::S4, "0.653", 0.653, 2.71075, 10, 10.99092, 11.6302, Some(12.2128)),
    row(TableId::S4, "0.68471920300192", 0.68471920300192, 2.53556, 10, 10.000004, 10.6250, Some(11.17937)),
    row(TableId::S4, "0.6847193", 0.6847193, 2.53556, 9, 9.99999994, 10.624998, Some(11.17936)),
    row(TableId::S4, "0.68811601660265", 0.68811601660265, 2.51692, 9, 9.8530813, 10.5242, Some(11.0693)),
    row(TableId::S4, "0.71", 0.71, 2.3976, 8, 8.9684325, 9.9017, Some(10.3642)),
    row(TableId::S4, "0.785398163397449", 0.785398163397449, 2.0, 8, 8.0000293, 7.99999999999999, Some(8.00008)),
    row(TableId::S4, "0.78539828", 0.78539828, 2.0, 5, 7.9999982, 7.999994, Some(8.00009)),
    row(TableId::S4, "0.88607712356268", 0.88607712356268, 1.52096, 5, 5.008075, 5.000000005, Some(5.00003)),
    row(TableId::S4, "0.9", 0.9, 1.46106, 4, 4.5958861, 4.4014, Some(4.5586)),
    row(TableId::S4, "0.91173828638360", 0.91173828638360, 1.4121, 4, 4.0000002, 4.0000002, Some(4.0002)),
    row(TableId::S4, "0.9206", 0.9206, 1.37591, 3, 3.74363, 3.7436, None),
    row(TableId::S4, "0.95531661577188", 0.95531661577188, 1.2431, 3, 3.00000005, 3.00000004, None),
    row(TableId::S4, "pi/3", std::f64::consts::FRAC_PI_3, 1.0, 2, 2.000000000000001, 2.0, None),
];

/// Published limit of `kappa_S(n, r)` as `r -> 0`: the value and whether it
/// is only conjectural. Reference metadata, never a computed bound.
pub fn limiting_kappa_s_at_zero(n: u32) -> Option<(u32, bool)> {
    match n {
        2 => Some((5, false)),
        3 => Some((12, false)),
        4 => Some((22, true)),
        _ => None,
    }
}

/// The closed form behind one jump radius of `kappa_S(3, r)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JumpForm {
    /// `pi / k`.
    PiOver(u32),
    /// `arccos(tau)` where `tau` is the sextic root selected below.
    SexticRoot,
    /// `arcsec(2 sqrt 2) / 2`.
    HalfArcsecTwoSqrtTwo,
    /// `pi/4 + arccsc(2 - csc(pi/18)) / 2`.
    QuarterPiPlusHalfArccsc,
    /// `arccos(p/q) / 2`.
    HalfArccos(i32, i32),
    /// `pi`.
    Pi,
}

impl std::fmt::Display for JumpForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            JumpForm::PiOver(k) => write!(f, "pi/{k}"),
            JumpForm::SexticRoot => {
                write!(f, "arccos(tau), 16 tau^6 - 44 tau^4 + 34 tau^2 - 7 = 0")
            }
            JumpForm::HalfArcsecTwoSqrtTwo => write!(f, "arcsec(2 sqrt 2)/2"),
            JumpForm::QuarterPiPlusHalfArccsc => {
                write!(f, "pi/4 + arccsc(2 - csc(pi/18))/2")
            }
            JumpForm::HalfArccos(p, q) => write!(f, "arccos({p}/{q})/2"),
            JumpForm::Pi => write!(f, "pi"),
        }
    }
}

/// One jump of the step function `kappa_S(3, r)`: at radius `r` the value
/// drops from `from` to `to`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JumpSpec {
    pub from: u32,
    pub to: u32,
    pub closed_form: JumpForm,
    /// The published approximate value of the radius.
    pub approx: f64,
}

/// Jumps of `kappa_S(3, r)`, in increasing radius order.
pub const JUMPS_S3: &[JumpSpec] = &[
    JumpSpec { from: 12, to: 10, closed_form: JumpForm::PiOver(10), approx: 0.3141592653590 },
    JumpSpec { from: 10, to: 9, closed_form: JumpForm::SexticRoot, approx: 0.4122234203273 },
    JumpSpec { from: 9, to: 8, closed_form: JumpForm::PiOver(6), approx: 0.5235987755983 },
    JumpSpec { from: 8, to: 7, closed_form: JumpForm::HalfArcsecTwoSqrtTwo, approx: 0.6047146014441 },
    JumpSpec { from: 7, to: 6, closed_form: JumpForm::QuarterPiPlusHalfArccsc, approx: 0.6507545374483 },
    JumpSpec { from: 6, to: 4, closed_form: JumpForm::PiOver(4), approx: 0.7853981633974 },
    JumpSpec { from: 4, to: 3, closed_form: JumpForm::HalfArccos(-1, 4), approx: 0.9117382909685 },
    JumpSpec { from: 3, to: 2, closed_form: JumpForm::HalfArccos(-1, 3), approx: 0.9553166181245 },
    JumpSpec { from: 2, to: 1, closed_form: JumpForm::PiOver(3), approx: 1.0471975511966 },
    JumpSpec { from: 1, to: 0, closed_form: JumpForm::Pi, approx: 3.1415926535898 },
];

fn next_up(x: f64) -> f64 {
    f64::from_bits(x.to_bits() + 1)
}

/// Rigorous enclosure of pi: the double approximation is known to round
/// down, so one ulp up brackets the true value.
fn pi_interval() -> Interval {
    Interval::new(std::f64::consts::PI, next_up(std::f64::consts::PI))
}

/// The sextic `16 tau^6 - 44 tau^4 + 34 tau^2 - 7`, evaluated exactly.
fn sextic(tau: &Rational) -> Rational {
    let t2 = tau * tau;
    let t4 = &t2 * &t2;
    let t6 = &t4 * &t2;
    let c = |k: i64| Rational::from(BigInt::from(k));
    c(16) * t6 - c(44) * t4 + c(34) * t2 - c(7)
}

/// Isolates the unique root of the sextic with `arccos(tau)` strictly
/// between `pi/10` and `pi/6`: sign changes on a rational grid pick the
/// bracket, then bisection narrows it to 1e-14.
fn sextic_root() -> (Rational, Rational) {
    // arccos(tau) in (pi/10, pi/6) means tau in (cos pi/6, cos pi/10); the
    // rational bracket [13/15, 19/20] contains that window's sign change.
    let q = |n: i64, d: i64| Rational::new(BigInt::from(n), BigInt::from(d));
    let (grid_lo, grid_hi, steps) = (q(13, 15), q(19, 20), 20i64);
    let width = (&grid_hi - &grid_lo) / Rational::from(BigInt::from(steps));
    let mut bracket = None;
    for k in 0..steps {
        let a = &grid_lo + &width * Rational::from(BigInt::from(k));
        let b = &a + &width;
        if (sextic(&a).is_negative()) != (sextic(&b).is_negative()) {
            assert!(bracket.is_none(), "sextic root in the window is not unique");
            bracket = Some((a, b));
        }
    }
    let (mut lo, mut hi) = bracket.expect("sextic has a root in the window");
    let target = q(1, 100_000_000_000_000); // 1e-14
    let neg_at_lo = sextic(&lo).is_negative();
    while &hi - &lo > target {
        let mid = (&lo + &hi) / Rational::from(BigInt::from(2));
        if sextic(&mid).is_negative() == neg_at_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// Computes the radius of a jump from its closed form as an interval of
/// width at most 1e-12.
pub fn jump_radius(spec: &JumpSpec) -> Interval {
    let pi = pi_interval();
    match spec.closed_form {
        JumpForm::PiOver(k) => pi.div(&Interval::point(f64::from(k))).unwrap(),
        JumpForm::Pi => pi,
        JumpForm::SexticRoot => {
            let (lo, hi) = sextic_root();
            let tau = Interval::new(
                Interval::from_rational(&lo).lo(),
                Interval::from_rational(&hi).hi(),
            );
            tau.acos().unwrap()
        }
        JumpForm::HalfArcsecTwoSqrtTwo => {
            // arcsec(2 sqrt 2) = arccos(1 / (2 sqrt 2)) = arccos(sqrt(1/8)).
            let inv = Interval::from_rational(&Rational::new(1.into(), 8.into()))
                .sqrt()
                .unwrap();
            inv.acos().unwrap().halved()
        }
        JumpForm::QuarterPiPlusHalfArccsc => {
            // pi/4 + arccsc(2 - csc(pi/18)) / 2, with
            // arccsc(x) = arcsin(1/x).
            let csc = pi
                .div(&Interval::point(18.0))
                .unwrap()
                .sin()
                .recip()
                .unwrap();
            let arg = Interval::point(2.0).sub(&csc).recip().unwrap();
            let quarter_pi = pi.div(&Interval::point(4.0)).unwrap();
            quarter_pi.add(&arg.asin().unwrap().halved())
        }
        JumpForm::HalfArccos(p, q) => {
            let x = Interval::from_rational(&Rational::new(p.into(), q.into()));
            x.acos().unwrap().halved()
        }
    }
}

/// All ten jumps with their computed radius enclosures, in table order.
pub fn jump_radii() -> Vec<(JumpSpec, Interval)> {
    JUMPS_S3.iter().map(|s| (*s, jump_radius(s))).collect()
}
