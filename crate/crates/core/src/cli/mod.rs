//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parameter error.

pub mod grid;
pub mod verify;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

pub use grid::{FieldGridSpec, GridKind, VectorFieldSample};
pub use verify::{run_checks, CheckResult, VerifyConfig, ALL_CHECKS};

use crate::bouwkamp::{solve_degree, solve_mode, solve_modes_for, truncation_order, Family};
use crate::pswf::{ModeIndex, ScalarPswf, VectorPswf};
use crate::quadrature::BallRuleSizes;
use crate::Error;

/// Version stamped into every CSV and JSON output.
pub const SCHEMA_VERSION: u32 = 1;

/// Relative agreement of χ between the standard and doubled truncation.
pub const TRUNCATION_GATE: f64 = 1e-10;

#[derive(Debug, Parser)]
#[command(
    name = "ballpswf",
    version,
    about = "Scalar and divergence-free vector PSWFs on the unit ball"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Table of χ for all modes with 2k + n ≤ N, as CSV `alpha,c,n,k,chi`.
    Eigenvalues(EigenvaluesArgs),
    /// Jacobi coefficients of one radial mode, as CSV `j,beta_j`.
    Coeffs(CoeffsArgs),
    /// Field values on a grid, as CSV `x,y,z,vx,vy,vz` (or `x,y,z,value`).
    Field(FieldArgs),
    /// Runs verification checks and writes a JSON report.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long)]
    pub c: f64,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EigenvaluesArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long = "N")]
    pub max_degree: usize,
    /// Include the scalar n = 0 modes.
    #[arg(long)]
    pub scalar: bool,
}

#[derive(Debug, Args)]
pub struct CoeffsArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    /// Allow n = 0.
    #[arg(long)]
    pub scalar: bool,
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub ell: usize,
    /// KIND[:RES] with KIND one of slice-z, slice-y, ball3d, sphere-shell.
    #[arg(long, default_value = "slice-z:64")]
    pub grid: String,
    /// Half-width of the square or cube grid.
    #[arg(long)]
    pub extent: Option<f64>,
    /// Plane offset of slices, radius of the shell.
    #[arg(long, allow_hyphen_values = true)]
    pub level: Option<f64>,
    /// Write the scalar PSWF instead of the vector field.
    #[arg(long)]
    pub scalar: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long = "N")]
    pub max_degree: usize,
    /// Comma-separated subset of checks, or `all`.
    #[arg(long, default_value = "all")]
    pub checks: String,
    #[arg(long = "quad-mr", default_value_t = BallRuleSizes::DEFAULT.m_r)]
    pub quad_mr: usize,
    #[arg(long = "quad-mt", default_value_t = BallRuleSizes::DEFAULT.m_theta)]
    pub quad_mt: usize,
    #[arg(long = "quad-mp", default_value_t = BallRuleSizes::DEFAULT.m_phi)]
    pub quad_mp: usize,
    #[arg(long, default_value_t = 20240601)]
    pub seed: u64,
}

/// Failure classes mapped to exit codes.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failed(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Convergence(_) => CliError::Failed(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Usage(format!("I/O error: {e}"))
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("verification failed: {msg}");
            1
        }
    }
}

fn dispatch(cmd: Command) -> CliResult<i32> {
    match cmd {
        Command::Eigenvalues(a) => cmd_eigenvalues(&a),
        Command::Coeffs(a) => cmd_coeffs(&a),
        Command::Field(a) => cmd_field(&a),
        Command::Verify(a) => cmd_verify(&a),
    }
}

fn open_output(path: &Option<PathBuf>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| {
            CliError::Usage(format!("cannot write {}: {e}", p.display()))
        })?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// 17 significant digits.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn family(scalar: bool) -> Family {
    if scalar {
        Family::Scalar
    } else {
        Family::Vector
    }
}

fn cmd_eigenvalues(a: &EigenvaluesArgs) -> CliResult<i32> {
    let (alpha, c) = (a.common.alpha, a.common.c);
    let fam = family(a.scalar);
    let table = solve_modes_for(a.max_degree, alpha, c, fam)?;
    // Truncation gate: χ must not move when K doubles.
    for e in table.iter() {
        let k2 = 2 * truncation_order(a.max_degree, e.n, alpha);
        let chi2 = solve_degree(e.n, alpha, c, k2, fam)?[e.k].chi;
        if (chi2 - e.chi).abs() > TRUNCATION_GATE * e.chi.abs().max(1.0) {
            return Err(CliError::Failed(format!(
                "chi for (n, k) = ({}, {}) changed from {} to {chi2} under doubled truncation",
                e.n, e.k, e.chi
            )));
        }
    }
    let mut w = open_output(&a.common.out)?;
    writeln!(w, "# schema_version={SCHEMA_VERSION}")?;
    writeln!(w, "alpha,c,n,k,chi")?;
    for e in table.iter() {
        writeln!(
            w,
            "{},{},{},{},{}",
            num(alpha),
            num(c),
            e.n,
            e.k,
            num(e.chi)
        )?;
    }
    w.flush()?;
    Ok(0)
}

fn cmd_coeffs(a: &CoeffsArgs) -> CliResult<i32> {
    let e = solve_mode(a.n, a.k, a.common.alpha, a.common.c, family(a.scalar))?;
    let mut w = open_output(&a.common.out)?;
    writeln!(w, "# schema_version={SCHEMA_VERSION} chi={}", num(e.chi))?;
    writeln!(w, "j,beta_j")?;
    for (j, b) in e.beta.iter().enumerate().filter(|(_, b)| **b != 0.0) {
        writeln!(w, "{j},{}", num(*b))?;
    }
    w.flush()?;
    Ok(0)
}

fn cmd_field(a: &FieldArgs) -> CliResult<i32> {
    let mut spec: FieldGridSpec = a.grid.parse()?;
    spec = FieldGridSpec::new(
        spec.kind,
        spec.resolution,
        a.extent.unwrap_or(spec.extent),
        a.level.unwrap_or(spec.level),
    )?;
    let mode = ModeIndex::new(a.common.alpha, a.common.c, a.n, a.k, a.ell)?;
    let points = spec.points();
    let mut w = open_output(&a.common.out)?;
    writeln!(w, "# schema_version={SCHEMA_VERSION}")?;
    if a.scalar {
        let s = ScalarPswf::new(mode)?;
        writeln!(w, "x,y,z,value")?;
        for p in &points {
            writeln!(
                w,
                "{},{},{},{}",
                num(p.x),
                num(p.y),
                num(p.z),
                num(s.eval(p)?)
            )?;
        }
    } else {
        let v = VectorPswf::new(mode)?;
        writeln!(w, "x,y,z,vx,vy,vz")?;
        let mut dropped = 0usize;
        for p in &points {
            match v.eval(p) {
                Ok(f) => {
                    let s = VectorFieldSample::new(p, &f);
                    writeln!(
                        w,
                        "{},{},{},{},{},{}",
                        num(s.x),
                        num(s.y),
                        num(s.z),
                        num(s.vx),
                        num(s.vy),
                        num(s.vz)
                    )?;
                }
                Err(Error::Pole(_)) => dropped += 1,
                Err(e) => return Err(e.into()),
            }
        }
        if dropped > 0 {
            eprintln!("# dropped {dropped} polar-axis points");
        }
    }
    w.flush()?;
    Ok(0)
}

fn parse_checks(s: &str) -> CliResult<Vec<String>> {
    if s == "all" {
        return Ok(ALL_CHECKS.iter().map(|c| c.to_string()).collect());
    }
    let names: Vec<String> = s
        .split(',')
        .map(|c| c.trim().to_string())
        .filter(|c| !c.is_empty())
        .collect();
    for n in &names {
        if !ALL_CHECKS.contains(&n.as_str()) {
            return Err(CliError::Usage(format!(
                "unknown check {n:?}; expected one of {}",
                ALL_CHECKS.join(", ")
            )));
        }
    }
    if names.is_empty() {
        return Err(CliError::Usage("no checks selected".into()));
    }
    Ok(names)
}

fn cmd_verify(a: &VerifyArgs) -> CliResult<i32> {
    let checks = parse_checks(&a.checks)?;
    let sizes = BallRuleSizes::new(a.quad_mr, a.quad_mt, a.quad_mp);
    let cfg = VerifyConfig {
        alpha: a.common.alpha,
        c: a.common.c,
        max_degree: a.max_degree,
        quadrature: sizes,
        mu_quadrature: BallRuleSizes::new(
            sizes.m_r.div_ceil(2),
            sizes.m_theta.div_ceil(2),
            sizes.m_phi.div_ceil(2),
        ),
        seed: a.seed,
    };
    let results = run_checks(&cfg, &checks)?;
    for r in &results {
        let line = format!(
            "# {:<12} {} value={:.3e} tolerance={:.1e}",
            r.name,
            if r.passed { "pass" } else { "FAIL" },
            r.value,
            r.tolerance
        );
        if a.common.out.is_some() {
            println!("{line}");
        } else {
            eprintln!("{line}");
        }
    }
    let passed = results.iter().all(|r| r.passed);
    let report = json!({
        "schema_version": SCHEMA_VERSION,
        "config": cfg,
        "passed": passed,
        "checks": results,
    });
    let mut w = open_output(&a.common.out)?;
    serde_json::to_writer_pretty(&mut w, &report).map_err(|e| CliError::Usage(e.to_string()))?;
    writeln!(w)?;
    w.flush()?;
    Ok(if passed { 0 } else { 1 })
}
