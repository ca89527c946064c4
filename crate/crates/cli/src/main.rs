//! `efp`: exact emptiness formation probabilities, identity-check suites,
//! asymptotic rate functions and matrix-model densities from the command
//! line. Text goes to stdout (CSV tables under `#` metadata, or JSON with
//! `--json`); timing and errors go to stderr.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on a usage
//! or domain error.

mod commands;
mod report;
mod suites;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use efp_core::EfpError;

#[derive(Parser)]
#[command(name = "efp", version, about = "Emptiness formation probability toolkit")]
struct Cli {
    /// Emit the run report as JSON instead of text/CSV.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact f_{r,s} at a rational alpha.
    Efp(EfpArgs),
    /// Run an identity-check suite.
    Check(CheckArgs),
    /// Rate function sigma(v), its derivatives and regime.
    Sigma(SigmaArgs),
    /// Finite-size estimates -log f_{r,s} / r^2 at fixed v = s/r.
    Sweep(SweepArgs),
    /// Saddle-point eigenvalue density on [0, R].
    Density(DensityArgs),
    /// The third-order transition at v = v_c.
    Transition(TransitionArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Hankel,
    Oracle,
    Special,
    All,
}

#[derive(Args)]
pub struct EfpArgs {
    /// Weight parameter as an exact rational, e.g. 1/2.
    #[arg(long)]
    pub alpha: String,
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub s: usize,
    /// Weight normalization; when given, the partition functions are reported.
    #[arg(long)]
    pub rho: Option<String>,
    #[arg(long, value_enum, default_value = "hankel")]
    pub method: MethodArg,
    /// Also print f_{r,s} as a polynomial in alpha (coefficients, low to high).
    #[arg(long)]
    pub symbolic: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Toda,
    Ode,
    /// Master-integral quadrature against its closed form.
    #[value(name = "appendix-b", alias = "master-integral")]
    MasterIntegral,
    Density,
    Moments,
    All,
}

#[derive(Args)]
pub struct CheckArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    /// Largest r in the Toda grid.
    #[arg(long, default_value_t = 8)]
    pub r_max: usize,
    /// Alpha for the ode, density and moments suites.
    #[arg(long, default_value = "1/4")]
    pub alpha: String,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("point").required(true).args(["v", "sweep"])))]
pub struct SigmaArgs {
    #[arg(long)]
    pub alpha: String,
    /// Aspect ratio s/r in [0, 1].
    #[arg(long)]
    pub v: Option<String>,
    /// CSV sweep over v, as start:end:step.
    #[arg(long)]
    pub sweep: Option<String>,
    /// Weight normalization used in the free energy.
    #[arg(long, default_value_t = 2.0)]
    pub rho: f64,
}

#[derive(Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub alpha: String,
    /// Exact rational aspect ratio s/r.
    #[arg(long)]
    pub v: String,
    /// Comma-separated, strictly increasing lattice sizes.
    #[arg(long, value_delimiter = ',', required = true)]
    pub r: Vec<usize>,
}

#[derive(Args)]
pub struct DensityArgs {
    #[arg(long)]
    pub alpha: String,
    /// Hard-wall position R = r/s >= 1.
    #[arg(long = "R")]
    pub r: String,
    #[arg(long, default_value_t = 200)]
    pub points: usize,
}

#[derive(Args)]
pub struct TransitionArgs {
    #[arg(long)]
    pub alpha: String,
    /// Step of the one-sided finite difference.
    #[arg(long, default_value_t = 1e-4)]
    pub h: f64,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(EfpError),
}

impl From<EfpError> for CliError {
    fn from(e: EfpError) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(EfpError::Domain(_) | EfpError::Parse(_) | EfpError::Unsupported(_)) => 2,
            CliError::Core(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("EFP_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("EFP_THREADS = {raw:?} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot configure {n} threads: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let result = configure_threads().and_then(|()| match &cli.command {
        Command::Efp(a) => commands::efp(a),
        Command::Check(a) => suites::check(a),
        Command::Sigma(a) => commands::sigma(a),
        Command::Sweep(a) => commands::sweep(a),
        Command::Density(a) => commands::density(a),
        Command::Transition(a) => commands::transition(a),
    });
    match result {
        Ok(mut report) => {
            report.wall_time_ms = started.elapsed().as_millis();
            if cli.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            eprintln!("wall_time_ms: {}", report.wall_time_ms);
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                for c in report.checks.iter().filter(|c| c.status == report::Status::Fail) {
                    eprintln!("check failed: {} measured {:e} > tolerance {:e}", c.name, c.measured, c.tolerance);
                }
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("efp: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
