//! Command-line front end: certified square-to-linear ratio bounds, chain
//! certificates, quadratic-form case verification, lattice ordering search,
//! and the geometric predicates, all reporting exact rationals as JSON.

use clap::{Parser, Subcommand, ValueEnum};
use slr::cases::{builtin_cases, verify_case, ExpectedMin};
use slr::catalog::catalog;
use slr::certificate::{best_chain, check_certificate};
use slr::checks::{antipode_pair_find, circle_containment_check, unit_square_boundary};
use slr::engine::{slr_bounds, BoundsParams};
use slr::geometry::Point2;
use slr::lattice::{normalized_ratio, optimal_ordering, MoveRule};
use slr::rational::{format_rational, parse_rational, rat, Rational};
use slr::report::{
    cases_report_json, AntipodeReport, BoundsReport, CertVerifyReport, CertificateJson,
    CircleReport, LatticeReport,
};
use slr::selfsimilar::{load_curve_spec, SelfSimilarCurveSpec};
use slr::svg::{curve_svg, lattice_svg};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

#[derive(Parser)]
#[command(
    name = "slr",
    about = "Exact square-to-linear ratio bounds, chain certificates and lattice ordering search",
    version
)]
struct Cli {
    /// Worker cap for the pair scans; overrides SLR_THREADS.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Two-sided ratio bounds for a curve, with an optional SVG plot.
    Bounds {
        #[arg(long, conflicts_with = "spec_file")]
        curve: Option<String>,
        #[arg(long)]
        spec_file: Option<PathBuf>,
        /// Target bracket width as a rational, e.g. 1/10.
        #[arg(long, default_value = "1/10")]
        gap: String,
        #[arg(long, default_value_t = 6)]
        max_depth: u32,
        #[arg(long, default_value_t = 2_000_000)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        no_timestamp: bool,
    },
    /// Best chain certificate for a refined curve, or verification of a
    /// stored certificate.
    Certify {
        #[arg(long, conflicts_with = "spec_file")]
        curve: Option<String>,
        #[arg(long)]
        spec_file: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        depth: u32,
        #[arg(long, default_value_t = 8)]
        max_nodes: usize,
        /// Re-check this certificate file instead of searching.
        #[arg(long)]
        verify: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Verify the built-in quadratic-form case minima.
    Cases {
        /// Write the full machine-readable report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Run a single case by name.
        #[arg(long)]
        only: Option<String>,
    },
    /// Search for the lattice ordering minimizing the discrete ratio.
    Lattice {
        #[arg(long)]
        rows: u32,
        #[arg(long)]
        cols: u32,
        #[arg(long, default_value_t = 1_000_000_000)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = MovesArg::Any)]
        moves: MovesArg,
        /// Include the report-only normalized ratio.
        #[arg(long)]
        normalized: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        no_timestamp: bool,
    },
    /// Find a boundary point whose visit interval brackets a visit of its
    /// antipode.
    Antipode {
        #[arg(long, conflicts_with = "spec_file")]
        curve: Option<String>,
        #[arg(long)]
        spec_file: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        depth: u32,
        #[arg(long, default_value = "1/16")]
        tol: String,
        #[arg(long, default_value_t = 16)]
        boundary_steps: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        no_timestamp: bool,
    },
    /// Check samples between two indices against the diameter disk of the
    /// endpoint pair.
    Circle {
        #[arg(long, conflicts_with = "spec_file")]
        curve: Option<String>,
        #[arg(long)]
        spec_file: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        depth: u32,
        #[arg(long)]
        a_idx: usize,
        #[arg(long)]
        b_idx: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        no_timestamp: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MovesArg {
    Any,
    King,
    Rook,
}

impl From<MovesArg> for MoveRule {
    fn from(m: MovesArg) -> MoveRule {
        match m {
            MovesArg::Any => MoveRule::Any,
            MovesArg::King => MoveRule::King,
            MovesArg::Rook => MoveRule::Rook,
        }
    }
}

/// Exit meanings: 0 success, 1 verification or case failure, 2 input error.
enum CliError {
    Input(String),
    Failure(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Failure(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Failure(m) => m,
        }
    }
}

fn input_err<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let threads = cli
        .threads
        .or_else(|| {
            std::env::var("SLR_THREADS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(1)
        .max(1);
    match cli.cmd {
        Cmd::Bounds {
            curve,
            spec_file,
            gap,
            max_depth,
            budget,
            out,
            svg,
            no_timestamp,
        } => cmd_bounds(
            &resolve_curve(curve.as_deref(), spec_file.as_deref())?,
            &gap,
            max_depth,
            budget,
            threads,
            out.as_deref(),
            svg.as_deref(),
            no_timestamp,
        ),
        Cmd::Certify {
            curve,
            spec_file,
            depth,
            max_nodes,
            verify,
            out,
            svg,
        } => {
            let (name, spec) = resolve_curve(curve.as_deref(), spec_file.as_deref())?;
            match verify {
                Some(path) => cmd_certify_verify(&spec, depth, &path),
                None => cmd_certify(&name, &spec, depth, max_nodes, out.as_deref(), svg.as_deref()),
            }
        }
        Cmd::Cases { json, only } => cmd_cases(json.as_deref(), only.as_deref()),
        Cmd::Lattice {
            rows,
            cols,
            budget,
            moves,
            normalized,
            out,
            svg,
            no_timestamp,
        } => cmd_lattice(
            rows,
            cols,
            budget,
            moves.into(),
            normalized,
            out.as_deref(),
            svg.as_deref(),
            no_timestamp,
        ),
        Cmd::Antipode {
            curve,
            spec_file,
            depth,
            tol,
            boundary_steps,
            out,
            no_timestamp,
        } => cmd_antipode(
            &resolve_curve(curve.as_deref(), spec_file.as_deref())?.1,
            depth,
            &tol,
            boundary_steps,
            out.as_deref(),
            no_timestamp,
        ),
        Cmd::Circle {
            curve,
            spec_file,
            depth,
            a_idx,
            b_idx,
            out,
            no_timestamp,
        } => cmd_circle(
            &resolve_curve(curve.as_deref(), spec_file.as_deref())?.1,
            depth,
            a_idx,
            b_idx,
            out.as_deref(),
            no_timestamp,
        ),
    }
}

fn resolve_curve(
    name: Option<&str>,
    spec_file: Option<&Path>,
) -> Result<(String, SelfSimilarCurveSpec), CliError> {
    match (name, spec_file) {
        (Some(name), None) => Ok((name.to_string(), catalog(name).map_err(input_err)?)),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
            let spec = load_curve_spec(&text).map_err(input_err)?;
            Ok((path.display().to_string(), spec))
        }
        _ => Err(CliError::Input(
            "exactly one of --curve or --spec-file is required".to_string(),
        )),
    }
}

fn parse_gap(s: &str) -> Result<Rational, CliError> {
    parse_rational(s).map_err(input_err)
}

fn timestamp(suppress: bool) -> Option<u64> {
    if suppress {
        None
    } else {
        Some(
            SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        )
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn write_svg(text: &str, path: &Path) -> Result<(), CliError> {
    std::fs::write(path, text)
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}

#[allow(clippy::too_many_arguments)]
fn cmd_bounds(
    (name, spec): &(String, SelfSimilarCurveSpec),
    gap: &str,
    max_depth: u32,
    budget: u64,
    threads: usize,
    out: Option<&Path>,
    svg: Option<&Path>,
    no_timestamp: bool,
) -> Result<(), CliError> {
    let params = BoundsParams {
        target_gap: parse_gap(gap)?,
        max_depth,
        budget,
        threads,
    };
    let result = slr_bounds(spec, &params).map_err(input_err)?;
    let report = BoundsReport::new(
        name.clone(),
        &result,
        spec.coverage_verified(),
        timestamp(no_timestamp),
    );
    let text = serde_json::to_string_pretty(&report).map_err(input_err)?;
    emit(&text, out)?;
    if let Some(path) = svg {
        let vertices = spec.vertices(result.depth).map_err(input_err)?;
        let markers = vec![result.witness.p1.clone(), result.witness.p2.clone()];
        write_svg(&curve_svg(&vertices, &markers), path)?;
    }
    Ok(())
}

fn cmd_certify(
    name: &str,
    spec: &SelfSimilarCurveSpec,
    depth: u32,
    max_nodes: usize,
    out: Option<&Path>,
    svg: Option<&Path>,
) -> Result<(), CliError> {
    let vertices = spec.vertices(depth).map_err(input_err)?;
    let cert = best_chain(&vertices, max_nodes).map_err(input_err)?;
    let json = CertificateJson::from_certificate(&cert);
    let text = serde_json::to_string_pretty(&json).map_err(input_err)?;
    emit(&text, out)?;
    eprintln!(
        "{name}: certificate value {} ({} nodes)",
        format_rational(&cert.value),
        cert.chain.len()
    );
    if let Some(path) = svg {
        let markers: Vec<Point2> = cert.chain.nodes().iter().map(|n| n.point.clone()).collect();
        write_svg(&curve_svg(&vertices, &markers), path)?;
    }
    Ok(())
}

fn cmd_certify_verify(
    spec: &SelfSimilarCurveSpec,
    depth: u32,
    path: &Path,
) -> Result<(), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let json: CertificateJson = serde_json::from_str(&text).map_err(input_err)?;
    let (chain, sigma, value) = json.to_chain().map_err(CliError::Input)?;
    let check = check_certificate(&chain, &sigma, &value, spec, depth).map_err(input_err)?;
    let report = CertVerifyReport::from_check(&check);
    let text = serde_json::to_string_pretty(&report).map_err(input_err)?;
    println!("{text}");
    if check.pass() {
        Ok(())
    } else {
        Err(CliError::Failure(format!(
            "certificate verification failed ({} bad nodes, sigma {}, value {})",
            report.node_failures.len(),
            if report.sigma_matches { "ok" } else { "mismatch" },
            if report.value_matches { "ok" } else { "mismatch" },
        )))
    }
}

fn cmd_cases(json: Option<&Path>, only: Option<&str>) -> Result<(), CliError> {
    let all = builtin_cases();
    let selected: Vec<_> = match only {
        Some(name) => {
            let matched: Vec<_> = all.into_iter().filter(|c| c.name == name).collect();
            if matched.is_empty() {
                return Err(CliError::Input(format!("unknown case `{name}`")));
            }
            matched
        }
        None => all,
    };
    let outcomes: Vec<_> = selected.iter().map(verify_case).collect();
    let all_pass = outcomes.iter().all(|o| o.pass);
    println!(
        "{:<10} {:>14} {:>20} {:>14}  status",
        "case", "computed min", "argmin", "expected"
    );
    for o in &outcomes {
        let expected = match &o.expected {
            ExpectedMin::Exact { min, .. } => format_rational(min),
            ExpectedMin::AtLeast { bound } => format!(">= {}", format_rational(bound)),
        };
        println!(
            "{:<10} {:>14} {:>20} {:>14}  {}",
            o.name,
            format_rational(&o.computed_min),
            format!(
                "({}, {})",
                format_rational(&o.computed_argmin.0),
                format_rational(&o.computed_argmin.1)
            ),
            expected,
            if o.pass { "pass" } else { "FAIL" },
        );
    }
    println!("labels normalized: sub-cases renamed to 1a/1b/1c and 2a/2b/2c in order of appearance");
    if let Some(path) = json {
        let report = slr::cases::CaseReport {
            outcomes: outcomes.clone(),
            all_pass,
        };
        let text = serde_json::to_string_pretty(&cases_report_json(&report)).map_err(input_err)?;
        std::fs::write(path, text)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
    }
    if all_pass {
        Ok(())
    } else {
        Err(CliError::Failure("one or more cases failed".to_string()))
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_lattice(
    rows: u32,
    cols: u32,
    budget: u64,
    rule: MoveRule,
    normalized: bool,
    out: Option<&Path>,
    svg: Option<&Path>,
    no_timestamp: bool,
) -> Result<(), CliError> {
    let result = optimal_ordering(rows, cols, budget, rule).map_err(input_err)?;
    let norm = normalized.then(|| normalized_ratio(&result.best.value, rows, cols));
    let report = LatticeReport::new(&result, norm, timestamp(no_timestamp));
    let text = serde_json::to_string_pretty(&report).map_err(input_err)?;
    emit(&text, out)?;
    if let Some(path) = svg {
        write_svg(&lattice_svg(&result.ordering), path)?;
    }
    Ok(())
}

fn cmd_antipode(
    spec: &SelfSimilarCurveSpec,
    depth: u32,
    tol: &str,
    boundary_steps: u32,
    out: Option<&Path>,
    no_timestamp: bool,
) -> Result<(), CliError> {
    let tol = parse_gap(tol)?;
    if boundary_steps == 0 {
        return Err(CliError::Input("boundary-steps must be positive".to_string()));
    }
    let vertices = spec.vertices(depth).map_err(input_err)?;
    let boundary = unit_square_boundary(boundary_steps);
    let center = Point2::new(rat(1, 2), rat(1, 2));
    let witness = antipode_pair_find(&vertices, &boundary, &center, &tol)
        .map_err(|e| CliError::Failure(e.to_string()))?;
    let report = AntipodeReport::new(&witness, timestamp(no_timestamp));
    let text = serde_json::to_string_pretty(&report).map_err(input_err)?;
    emit(&text, out)
}

fn cmd_circle(
    spec: &SelfSimilarCurveSpec,
    depth: u32,
    a_idx: usize,
    b_idx: usize,
    out: Option<&Path>,
    no_timestamp: bool,
) -> Result<(), CliError> {
    let vertices = spec.vertices(depth).map_err(input_err)?;
    let report = circle_containment_check(&vertices, a_idx, b_idx).map_err(input_err)?;
    let json = CircleReport::new(a_idx, b_idx, &report, timestamp(no_timestamp));
    let text = serde_json::to_string_pretty(&json).map_err(input_err)?;
    emit(&text, out)
}
