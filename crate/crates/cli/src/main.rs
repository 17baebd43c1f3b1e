//! Command-line surface: single bound queries, SDP runs, code
//! certification, table reproduction, and the jump radii.

use clap::{Parser, Subcommand, ValueEnum};
use kissing_core::certifier::{certify, exactify, load_code, CertifyError, CodeCertificate};
use kissing_core::geom::{
    self, cos_theta_of_radius, euclidean_bounds, lower_bound_hyp, lower_bound_sph,
    limiting_kappa_sph, upper_bound_hyp, upper_bound_sph, BoundReport, GeomError,
};
use kissing_core::reference::{
    jump_radius, ReferenceRow, TableId, JUMPS_S3, TABLE_H3, TABLE_H4, TABLE_S4,
};
use kissing_core::sdp::{
    bound_from_solution, build_sdp, solve, verify_solution, SdpProblem, SdpSolution,
    SolverSettings, SolverStatus,
};
use kissing_core::Space;
use rayon::prelude::*;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "kissing",
    version,
    about = "Certified upper and lower bounds for kissing numbers in hyperbolic and spherical space"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format: aligned text or one `key: value` record per item.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SpaceArg {
    #[value(name = "H", alias = "h")]
    H,
    #[value(name = "S", alias = "s")]
    S,
    #[value(name = "E", alias = "e")]
    E,
}

impl From<SpaceArg> for Space {
    fn from(s: SpaceArg) -> Space {
        match s {
            SpaceArg::H => Space::Hyperbolic,
            SpaceArg::S => Space::Spherical,
            SpaceArg::E => Space::Euclidean,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Geometric,
    Asymptotic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableArg {
    #[value(name = "H3", alias = "h3")]
    H3,
    #[value(name = "H4", alias = "h4")]
    H4,
    #[value(name = "S3", alias = "s3")]
    S3,
    #[value(name = "S4", alias = "s4")]
    S4,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form geometric bounds for a single (space, dimension, radius).
    Bounds {
        #[arg(long, value_enum)]
        space: SpaceArg,
        #[arg(long)]
        dim: u32,
        #[arg(long, default_value_t = 0.0)]
        radius: f64,
        #[arg(long, value_enum, default_value_t = MethodArg::Geometric)]
        method: MethodArg,
    },
    /// Three-point SDP upper bound via the embedded interior-point solver.
    Sdp {
        #[arg(long, value_enum)]
        space: SpaceArg,
        #[arg(long)]
        dim: u32,
        #[arg(long)]
        radius: f64,
        /// Relaxation degree (the tables use 8; 12 is the supported maximum).
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(2..=12))]
        degree: u32,
        /// Re-check the returned solution against the assembled constraints.
        #[arg(long)]
        verify: bool,
    },
    /// Exact certification of a decimal spherical-code file.
    Certify {
        file: PathBuf,
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum)]
        space: SpaceArg,
    },
    /// Reproduce a published table alongside its reference columns.
    Table {
        #[arg(value_enum)]
        which: TableArg,
        /// Recompute the SDP column at this degree (omitted: reference only).
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..=12))]
        degree: Option<u32>,
    },
    /// The ten jump radii of kappa_S(3, r) from their closed forms.
    Jumps,
}

/// Failure category, mapped onto the stable exit-code contract:
/// 0 success, 2 usage (owned by the parser), 3 domain/validity, 4 solver.
enum CliError {
    Domain(String),
    Solver(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 3,
            CliError::Solver(_) => 4,
        }
    }
    fn message(&self) -> &str {
        match self {
            CliError::Domain(m) | CliError::Solver(m) => m,
        }
    }
}

impl From<GeomError> for CliError {
    fn from(e: GeomError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<CertifyError> for CliError {
    fn from(e: CertifyError) -> Self {
        CliError::Domain(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Bounds {
            space,
            dim,
            radius,
            method,
        } => cmd_bounds((*space).into(), *dim, *radius, *method, cli.format),
        Command::Sdp {
            space,
            dim,
            radius,
            degree,
            verify,
        } => cmd_sdp((*space).into(), *dim, *radius, *degree, *verify, cli.format),
        Command::Certify { file, dim, space } => {
            cmd_certify(file, *dim, (*space).into(), cli.format)
        }
        Command::Table { which, degree } => cmd_table(*which, *degree, cli.format),
        Command::Jumps => cmd_jumps(cli.format),
    }
}

fn render_reports(reports: &[BoundReport], format: Format) {
    match format {
        Format::Human => {
            let q = reports[0].query;
            println!("space {}  dim {}  radius {:.6}", q.space, q.n, q.r);
            println!("{:<12} {:<12} {:>14}  rigorous", "direction", "method", "value");
            for rep in reports {
                println!(
                    "{:<12} {:<12} {:>14.6}  {}",
                    rep.direction.to_string(),
                    rep.method.to_string(),
                    rep.value,
                    if rep.rigorous { "yes" } else { "no" }
                );
            }
        }
        Format::Machine => {
            for rep in reports {
                println!("space: {}", rep.query.space);
                println!("dim: {}", rep.query.n);
                println!("radius: {:.6}", rep.query.r);
                println!("direction: {}", rep.direction);
                println!("method: {}", rep.method);
                println!("value: {:.6}", rep.value);
                println!("rigorous: {}", rep.rigorous);
                println!();
            }
        }
    }
}

fn cmd_bounds(
    space: Space,
    dim: u32,
    radius: f64,
    method: MethodArg,
    format: Format,
) -> Result<(), CliError> {
    let reports = match (space, method) {
        (Space::Hyperbolic, MethodArg::Asymptotic) => {
            let value = geom::asymptotic_hyp(dim, radius)?;
            vec![BoundReport {
                query: geom::BoundQuery {
                    space,
                    n: dim,
                    r: radius,
                },
                value,
                direction: geom::Direction::Asymptotic,
                method: geom::Method::Geometric,
                rigorous: false,
            }]
        }
        (_, MethodArg::Asymptotic) => {
            return Err(CliError::Domain(
                "the asymptotic expansion applies to hyperbolic space only".into(),
            ))
        }
        (Space::Euclidean, _) => {
            if radius != 0.0 {
                return Err(CliError::Domain(
                    "Euclidean space admits no radius parameter; omit --radius".into(),
                ));
            }
            let (lower, upper) = euclidean_bounds(dim)?;
            vec![lower, upper]
        }
        (Space::Hyperbolic, _) => {
            vec![lower_bound_hyp(dim, radius)?, upper_bound_hyp(dim, radius)?]
        }
        (Space::Spherical, _) => {
            if radius > std::f64::consts::FRAC_PI_3 {
                vec![limiting_kappa_sph(dim, radius)?]
            } else {
                vec![lower_bound_sph(dim, radius)?, upper_bound_sph(dim, radius)?]
            }
        }
    };
    render_reports(&reports, format);
    Ok(())
}

fn solve_at(space: Space, dim: u32, radius: f64, degree: u32) -> Result<(SdpProblem, SdpSolution), CliError> {
    let conv = cos_theta_of_radius(space, radius)?;
    let p = build_sdp(dim, conv.cos_theta, degree).map_err(|e| CliError::Domain(e.to_string()))?;
    let s = solve(&p, &SolverSettings::default());
    Ok((p, s))
}

fn status_text(s: SolverStatus) -> &'static str {
    match s {
        SolverStatus::Optimal => "optimal",
        SolverStatus::MaxIterations => "max_iterations",
        SolverStatus::NumericalBreakdown => "numerical_breakdown",
        SolverStatus::Infeasible => "infeasible",
    }
}

fn cmd_sdp(
    space: Space,
    dim: u32,
    radius: f64,
    degree: u32,
    verify: bool,
    format: Format,
) -> Result<(), CliError> {
    if space == Space::Euclidean {
        return Err(CliError::Domain(
            "run the Euclidean case as hyperbolic at radius 0".into(),
        ));
    }
    if space == Space::Spherical && radius >= std::f64::consts::FRAC_PI_2 {
        return Err(CliError::Domain(format!(
            "spherical SDP needs r < pi/2, got {radius}"
        )));
    }
    let started = Instant::now();
    let (p, s) = solve_at(space, dim, radius, degree)?;
    let wall = started.elapsed().as_secs_f64();

    let emit = |key: &str, value: String| match format {
        Format::Human => println!("{key}: {value}"),
        Format::Machine => println!("{key}: {value}"),
    };
    emit("space", format!("{space}"));
    emit("dim", format!("{dim}"));
    emit("radius", format!("{radius:.6}"));
    emit("degree", format!("{degree}"));
    emit("cos_theta", format!("{:.17}", p.cos_theta));
    emit("status", status_text(s.status).to_string());
    emit("objective", format!("{:.6}", s.objective));
    emit("duality_gap", format!("{:.3e}", s.duality_gap));
    emit("primal_infeasibility", format!("{:.3e}", s.primal_infeasibility));
    emit("dual_infeasibility", format!("{:.3e}", s.dual_infeasibility));
    emit("iterations", format!("{}", s.iterations));
    for (b, eig) in p.blocks.iter().zip(s.min_eigenvalues.iter()) {
        emit(
            &format!("min_eigenvalue[{}]", b.name),
            format!("{eig:.3e}"),
        );
    }
    emit("wall_time_s", format!("{wall:.1}"));

    let bound = bound_from_solution(&p, &s)
        .map_err(|e| CliError::Solver(format!("{e}; best iterate reported above")))?;
    emit("bound", format!("{bound:.6}"));

    if verify {
        let report = verify_solution(&p, &s, 1e-7, 1e-7);
        emit("verify_max_equality_residual", format!("{:.3e}", report.max_equality_residual));
        emit("verify_min_eigenvalue", format!("{:.3e}", report.min_eigenvalue));
        emit("verify_passes", format!("{}", report.passes));
        if !report.passes {
            return Err(CliError::Solver(
                "solution failed verification at eps = 1e-7".into(),
            ));
        }
    }
    Ok(())
}

fn cmd_certify(file: &Path, dim: usize, space: Space, format: Format) -> Result<(), CliError> {
    let path = if file.exists() {
        file.to_path_buf()
    } else {
        fixtures_dir().join(file)
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| CliError::Domain(format!("cannot read {}: {e}", path.display())))?;
    let cert = certify(&exactify(&load_code(&text, dim)?)?, space)?;
    match format {
        Format::Human | Format::Machine => print!("{}", cert.to_document()),
    }
    Ok(())
}

fn fixtures_dir() -> PathBuf {
    std::env::var_os("KISSING_FIXTURES")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("fixtures"))
}

/// Bundled-code lookup for a construction column entry.
fn fixture_for(dim: u32, size: u32) -> Option<PathBuf> {
    let dir = fixtures_dir();
    let mut names = vec![format!("pack-{dim}-{size}.txt")];
    match (dim, size) {
        (3, 12) => names.push("icosahedron.txt".into()),
        (3, 6) => names.push("octahedron.txt".into()),
        (3, 4) => names.push("tetrahedron.txt".into()),
        _ => {}
    }
    names.into_iter().map(|n| dir.join(n)).find(|p| p.exists())
}

/// Certifies the bundled fixture of `size` points and checks that the code
/// is feasible at radius `r` of the given row.
fn construction_entry(space: Space, dim: u32, size: u32, r: f64) -> Option<(CodeCertificate, bool)> {
    let path = fixture_for(dim, size)?;
    let text = std::fs::read_to_string(path).ok()?;
    let code = exactify(&load_code(&text, dim as usize).ok()?).ok()?;
    let cert = certify(&code, space).ok()?;
    if cert.size != size as usize {
        return None;
    }
    let tol = 1e-6;
    let feasible = match space {
        Space::Hyperbolic => cert
            .hyperbolic_min_radius
            .as_ref()
            .map_or(true, |i| i.hi() <= r + tol),
        Space::Spherical => cert
            .spherical_max_radius
            .as_ref()
            .map_or(false, |i| i.lo() >= r - tol),
        Space::Euclidean => false,
    };
    Some((cert, feasible))
}

fn table_rows(which: TableArg) -> (&'static [ReferenceRow], Space, u32) {
    match which {
        TableArg::H3 => (TABLE_H3, Space::Hyperbolic, 3),
        TableArg::H4 => (TABLE_H4, Space::Hyperbolic, 4),
        TableArg::S4 => (TABLE_S4, Space::Spherical, 4),
        TableArg::S3 => unreachable!("S3 delegates to jumps"),
    }
}

fn theoretical_lower(space: Space, dim: u32, r: f64) -> Result<f64, CliError> {
    let rep = match space {
        Space::Hyperbolic => lower_bound_hyp(dim, r)?,
        Space::Spherical => lower_bound_sph(dim, r)?,
        Space::Euclidean => euclidean_bounds(dim)?.0,
    };
    Ok(rep.value)
}

fn cmd_table(which: TableArg, degree: Option<u32>, format: Format) -> Result<(), CliError> {
    if which == TableArg::S3 {
        return cmd_jumps(format);
    }
    let (rows, space, dim) = table_rows(which);

    // Row solves are independent; recompute the SDP column in parallel and
    // assemble the output in row order. An objective is only a bound when
    // the iterate verifies, so unverified solves render as "unconverged"
    // rather than a number.
    let sdp_computed: Vec<Option<Result<f64, ()>>> = match degree {
        Some(d) => rows
            .par_iter()
            .map(|row| {
                Some(match solve_at(space, dim, row.r, d) {
                    Ok((p, s)) if verify_solution(&p, &s, 1e-7, 1e-7).passes => {
                        bound_from_solution(&p, &s).map_err(|_| ())
                    }
                    _ => Err(()),
                })
            })
            .collect(),
        None => vec![None; rows.len()],
    };

    if format == Format::Human {
        println!(
            "table {:?}  (reference columns are published data, not computed; '!' flags disagreement)",
            which.id()
        );
        println!(
            "{:<18} {:>12} {:>12} {:>12} {:>12} {:>12} {:>12}",
            "r", "theor.lower", "construction", "sdp.computed", "sdp.paper", "levenshtein", "coxeter"
        );
    }
    for (row, sdp) in rows.iter().zip(sdp_computed) {
        let theor = theoretical_lower(space, dim, row.r)?;
        let theor_flag = if (theor - row.theoretical_lower).abs() > 1e-4 {
            "!"
        } else {
            ""
        };
        let construction = construction_entry(space, dim, row.construction_lower, row.r);
        let cons_text = match &construction {
            Some((_, true)) => format!("{}", row.construction_lower),
            Some((_, false)) => format!("{}!", row.construction_lower),
            None => "incomplete".to_string(),
        };
        let sdp_text = match sdp {
            Some(Ok(v)) => {
                let flag = if (v - row.sdp_paper).abs() > 0.5 { "!" } else { "" };
                format!("{v:.6}{flag}")
            }
            Some(Err(())) => "unconverged".to_string(),
            None => "-".to_string(),
        };
        let coxeter = row
            .coxeter
            .map_or("*".to_string(), |c| format!("{c:.6}"));
        match format {
            Format::Human => println!(
                "{:<18} {:>12} {:>12} {:>12} {:>12.6} {:>12.6} {:>12}",
                row.r_text,
                format!("{theor:.6}{theor_flag}"),
                cons_text,
                sdp_text,
                row.sdp_paper,
                row.levenshtein,
                coxeter
            ),
            Format::Machine => {
                println!("table: {:?}", row.table);
                println!("r: {}", row.r_text);
                println!("theoretical_lower_computed: {theor:.6}");
                println!("theoretical_lower_reference: {:.6}", row.theoretical_lower);
                println!("construction_lower: {cons_text}");
                match sdp {
                    Some(Ok(v)) => println!("sdp_computed: {v:.6}"),
                    Some(Err(())) => println!("sdp_computed: unconverged"),
                    None => {}
                }
                println!("sdp_reference: {:.6} (reference, not computed)", row.sdp_paper);
                println!("levenshtein: {:.6} (reference, not computed)", row.levenshtein);
                println!("coxeter: {coxeter} (reference, not computed)");
                println!();
            }
        }
    }
    Ok(())
}

impl TableArg {
    fn id(self) -> TableId {
        match self {
            TableArg::H3 => TableId::H3,
            TableArg::H4 => TableId::H4,
            TableArg::S3 => TableId::S3,
            TableArg::S4 => TableId::S4,
        }
    }
}

fn cmd_jumps(format: Format) -> Result<(), CliError> {
    if format == Format::Human {
        println!(
            "{:<10} {:<50} {:>16} {:>10} {:>16}",
            "jump", "closed form", "computed", "width", "published"
        );
    }
    for spec in JUMPS_S3 {
        let r = jump_radius(spec);
        match format {
            Format::Human => println!(
                "{:<10} {:<50} {:>16.13} {:>10.1e} {:>16.13}",
                format!("{} -> {}", spec.from, spec.to),
                spec.closed_form.to_string(),
                r.midpoint(),
                r.width(),
                spec.approx
            ),
            Format::Machine => {
                println!("from: {}", spec.from);
                println!("to: {}", spec.to);
                println!("closed_form: {}", spec.closed_form);
                println!("radius_lo: {:.17}", r.lo());
                println!("radius_hi: {:.17}", r.hi());
                println!("radius_width: {:.3e}", r.width());
                println!("published_approx: {:.13}", spec.approx);
                println!();
            }
        }
    }
    Ok(())
}
