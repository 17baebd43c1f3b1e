//! Python bindings: geometric bounds, exact code certification, the
//! three-point SDP bound, and the jump radii, mirroring the library API.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use kissing_core::certifier;
use kissing_core::geom::{self, BoundReport};
use kissing_core::reference;
use kissing_core::sdp;
use kissing_core::Space;

fn parse_space(s: &str) -> PyResult<Space> {
    match s {
        "H" | "h" => Ok(Space::Hyperbolic),
        "S" | "s" => Ok(Space::Spherical),
        "E" | "e" => Ok(Space::Euclidean),
        other => Err(PyValueError::new_err(format!(
            "space must be one of H, S, E; got {other:?}"
        ))),
    }
}

fn value_err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// One bound value with its provenance.
#[pyclass(name = "Bound", frozen, get_all)]
#[derive(Clone)]
struct PyBound {
    space: String,
    dim: u32,
    radius: f64,
    value: f64,
    direction: String,
    method: String,
    rigorous: bool,
}

#[pymethods]
impl PyBound {
    fn __repr__(&self) -> String {
        format!(
            "Bound(space='{}', dim={}, radius={}, value={}, direction='{}', method='{}', rigorous={})",
            self.space,
            self.dim,
            self.radius,
            self.value,
            self.direction,
            self.method,
            if self.rigorous { "True" } else { "False" }
        )
    }
}

impl From<BoundReport> for PyBound {
    fn from(r: BoundReport) -> Self {
        PyBound {
            space: r.query.space.to_string(),
            dim: r.query.n,
            radius: r.query.r,
            value: r.value,
            direction: r.direction.to_string(),
            method: r.method.to_string(),
            rigorous: r.rigorous,
        }
    }
}

/// Lower and upper bounds on the kissing function at radius `r`.
#[pyfunction]
fn bounds(space: &str, dim: u32, radius: f64) -> PyResult<Vec<PyBound>> {
    let reports: Vec<BoundReport> = match parse_space(space)? {
        Space::Hyperbolic => vec![
            geom::lower_bound_hyp(dim, radius).map_err(value_err)?,
            geom::upper_bound_hyp(dim, radius).map_err(value_err)?,
        ],
        Space::Spherical => {
            if radius > std::f64::consts::FRAC_PI_3 {
                vec![geom::limiting_kappa_sph(dim, radius).map_err(value_err)?]
            } else {
                vec![
                    geom::lower_bound_sph(dim, radius).map_err(value_err)?,
                    geom::upper_bound_sph(dim, radius).map_err(value_err)?,
                ]
            }
        }
        Space::Euclidean => {
            if radius != 0.0 {
                return Err(PyValueError::new_err(
                    "Euclidean bounds take radius 0 (congruent unit spheres)",
                ));
            }
            let (lo, hi) = geom::euclidean_bounds(dim).map_err(value_err)?;
            vec![lo, hi]
        }
    };
    Ok(reports.into_iter().map(PyBound::from).collect())
}

/// Cosine of the minimal angular separation forced by radius-`r` spheres.
#[pyfunction]
fn cos_theta_of_radius(space: &str, radius: f64) -> PyResult<f64> {
    let conv = geom::cos_theta_of_radius(parse_space(space)?, radius).map_err(value_err)?;
    Ok(conv.cos_theta)
}

/// Large-radius asymptote of the hyperbolic kissing function.
#[pyfunction]
fn asymptotic_hyp(dim: u32, radius: f64) -> PyResult<f64> {
    geom::asymptotic_hyp(dim, radius).map_err(value_err)
}

/// Exact certificate for a decimal code file.
#[pyclass(frozen, get_all)]
struct Certificate {
    space: String,
    status: String,
    size: usize,
    /// Floating-point image of the exact `t*`.
    max_inner_product: f64,
    /// `sign(t*)` and the exact square `t*^2` as a `num/den` string.
    max_inner_product_sign: i8,
    max_inner_product_square: String,
    argmax: (usize, usize),
    /// `[lo, hi]` enclosures, or `None` where the radius is undefined.
    hyperbolic_min_radius: Option<(f64, f64)>,
    spherical_max_radius: Option<(f64, f64)>,
}

#[pymethods]
impl Certificate {
    fn __repr__(&self) -> String {
        format!(
            "Certificate(space='{}', status='{}', size={}, max_inner_product={})",
            self.space, self.status, self.size, self.max_inner_product
        )
    }
}

/// Certifies the decimal code in `path` (one point per line, `dim`
/// coordinates) for the requested space.
#[pyfunction]
fn certify(path: &str, dim: usize, space: &str) -> PyResult<Certificate> {
    let space = parse_space(space)?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| PyValueError::new_err(format!("cannot read {path}: {e}")))?;
    let raw = certifier::load_code(&text, dim).map_err(value_err)?;
    let code = certifier::exactify(&raw).map_err(value_err)?;
    let cert = certifier::certify(&code, space).map_err(value_err)?;
    Ok(Certificate {
        space: cert.space.to_string(),
        status: match cert.status {
            certifier::CertStatus::Certified => "certified".into(),
            certifier::CertStatus::FeasibleAtZero => "feasible-at-zero".into(),
        },
        size: cert.size,
        max_inner_product: cert.max_inner_product.to_f64(),
        max_inner_product_sign: cert.max_inner_product.sign(),
        max_inner_product_square: cert.max_inner_product.square().to_string(),
        argmax: cert.argmax,
        hyperbolic_min_radius: cert.hyperbolic_min_radius.map(|i| (i.lo(), i.hi())),
        spherical_max_radius: cert.spherical_max_radius.map(|i| (i.lo(), i.hi())),
    })
}

/// Outcome of one SDP solve.
#[pyclass(frozen, get_all)]
struct SdpOutcome {
    dim: u32,
    cos_theta: f64,
    degree: u32,
    bound: f64,
    status: String,
    objective: f64,
    duality_gap: f64,
    primal_infeasibility: f64,
    dual_infeasibility: f64,
    iterations: usize,
    verified: bool,
    max_equality_residual: f64,
    min_eigenvalue: f64,
}

#[pymethods]
impl SdpOutcome {
    fn __repr__(&self) -> String {
        format!(
            "SdpOutcome(dim={}, cos_theta={}, degree={}, bound={}, status='{}', verified={})",
            self.dim,
            self.cos_theta,
            self.degree,
            self.bound,
            self.status,
            if self.verified { "True" } else { "False" }
        )
    }
}

/// Solves the three-point SDP bound on codes with pairwise inner products
/// at most `cos_theta` on `S^(dim-1)`, then verifies the returned solution.
#[pyfunction]
#[pyo3(signature = (dim, cos_theta, degree = 8, eps_eq = 1e-7, eps_psd = 1e-7))]
fn sdp_bound(
    py: Python<'_>,
    dim: u32,
    cos_theta: f64,
    degree: u32,
    eps_eq: f64,
    eps_psd: f64,
) -> PyResult<SdpOutcome> {
    py.allow_threads(|| {
        let p = sdp::build_sdp(dim, cos_theta, degree).map_err(value_err)?;
        let s = sdp::solve(&p, &sdp::SolverSettings::default());
        let report = sdp::verify_solution(&p, &s, eps_eq, eps_psd);
        let bound = sdp::bound_from_solution(&p, &s)
            .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
        Ok(SdpOutcome {
            dim,
            cos_theta,
            degree,
            bound,
            status: format!("{:?}", s.status),
            objective: s.objective,
            duality_gap: s.duality_gap,
            primal_infeasibility: s.primal_infeasibility,
            dual_infeasibility: s.dual_infeasibility,
            iterations: s.iterations,
            verified: report.passes,
            max_equality_residual: report.max_equality_residual,
            min_eigenvalue: report.min_eigenvalue,
        })
    })
}

/// The ten jumps of `kappa_S(3, r)` as tuples
/// `(from, to, closed_form, lo, hi)` with a rigorous radius enclosure.
#[pyfunction]
fn jumps() -> Vec<(u32, u32, String, f64, f64)> {
    reference::jump_radii()
        .into_iter()
        .map(|(spec, i)| (spec.from, spec.to, spec.closed_form.to_string(), i.lo(), i.hi()))
        .collect()
}

#[pymodule]
fn kissing_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBound>()?;
    m.add_class::<Certificate>()?;
    m.add_class::<SdpOutcome>()?;
    m.add_function(wrap_pyfunction!(bounds, m)?)?;
    m.add_function(wrap_pyfunction!(cos_theta_of_radius, m)?)?;
    m.add_function(wrap_pyfunction!(asymptotic_hyp, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    m.add_function(wrap_pyfunction!(sdp_bound, m)?)?;
    m.add_function(wrap_pyfunction!(jumps, m)?)?;
    Ok(())
}
