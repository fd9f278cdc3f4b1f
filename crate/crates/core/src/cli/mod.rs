//! Command-line front end for the `ringheat` binary.
//!
//! Exit status: `0` when every check passes, `1` when a check or solve fails,
//! `2` for usage and configuration errors.

pub mod config;
mod output;
pub mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::params::from_reduced;
use crate::solver::{
    convergence_study, solve_general, solve_paper_case, BcMode, ConvergenceTable, GeneralProblem,
    Grid1D, PaperCaseProblem, SolveResult,
};
use crate::temperature::{dimensional_t, theta_general};

pub use config::{BcArg, ConfigFile, Format, RunConfig, SchemeArg};
pub use verify::{run_checks, Category, CheckOutcome, VerifyReport};

/// Observed orders accepted by `convergence`.
pub const ORDER_RANGE: (f64, f64) = (1.8, 2.2);

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        CliError::Failure(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(format!("i/o error: {e}"))
    }
}

#[derive(Debug, Parser)]
#[command(name = "ringheat", version, about = "Exact temperature fields in an expanding viscous ring")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every subcommand; each overrides its config-file entry.
#[derive(Debug, Default, Clone, Args)]
pub struct GlobalArgs {
    /// JSON run configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, global = true)]
    pub bc_mode: Option<BcArg>,
    /// Asymptotic temperature constant `C5`.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub c5: Option<f64>,
    /// Number of cells in `eta`.
    #[arg(long, global = true)]
    pub grid: Option<usize>,
    /// Final reduced time.
    #[arg(long, global = true)]
    pub tau_end: Option<f64>,
    #[arg(long, value_enum, global = true)]
    pub scheme: Option<SchemeArg>,
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every residual, symmetry and conservation check.
    Verify,
    /// Solve the initial-boundary-value problem and compare with the closed form.
    Solve,
    /// Tabulate the closed-form temperature.
    Profile {
        /// Comma-separated `tau` values.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        taus: Option<Vec<f64>>,
        /// Number of uniform `eta` points on `[0, a]`.
        #[arg(long)]
        eta_points: Option<usize>,
    },
    /// Grid-refinement study with observed orders.
    Convergence {
        /// Comma-separated cell counts, coarse to fine.
        #[arg(long, value_delimiter = ',')]
        levels: Option<Vec<usize>>,
    },
}

/// Parses `args` and runs the selected subcommand.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// Runs a parsed command; returns the exit status on completion.
pub fn run(cli: Cli) -> Result<u8, CliError> {
    let file = match &cli.global.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let mut config = RunConfig::resolve(file, &cli.global)?;
    match cli.command {
        Command::Verify => cmd_verify(&config),
        Command::Solve => cmd_solve(&config),
        Command::Profile { taus, eta_points } => {
            if let Some(t) = taus {
                config.taus = t;
            }
            if let Some(n) = eta_points {
                config.eta_points = n;
            }
            cmd_profile(&config)
        }
        Command::Convergence { levels } => {
            if let Some(l) = levels {
                config.levels = l;
            }
            cmd_convergence(&config)
        }
    }
}

fn sink(config: &RunConfig) -> Result<Box<dyn Write>, CliError> {
    Ok(match &config.out {
        Some(path) => Box::new(std::io::BufWriter::new(std::fs::File::create(path)?)),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn cmd_verify(config: &RunConfig) -> Result<u8, CliError> {
    let report = run_checks(config)?;
    let json = serde_json::to_string_pretty(&report).map_err(|e| CliError::Failure(e.to_string()))?;
    match (&config.out, config.format) {
        (Some(path), _) => {
            std::fs::write(path, json + "\n")?;
            output::print_checks(&mut std::io::stdout().lock(), &report)?;
        }
        (None, Format::Json) => println!("{json}"),
        (None, Format::Csv) => output::print_checks(&mut std::io::stdout().lock(), &report)?,
    }
    Ok(if report.pass { 0 } else { 1 })
}

/// Solves with the configured boundary data; the worked-case problem is used
/// when the groups and constants are the worked-case ones.
pub fn solve(config: &RunConfig) -> Result<SolveResult, CliError> {
    let grid = Grid1D::new(config.n_cells, config.reduced.a).map_err(|e| CliError::Usage(e.to_string()))?;
    if config.is_paper_case() {
        Ok(solve_paper_case(&grid, &config.solver, config.consts.c5)?)
    } else if config.solver.bc_mode == BcMode::PaperNeumann {
        Err(CliError::Usage(
            "--bc-mode paper needs the worked-case groups and constants".into(),
        ))
    } else {
        Ok(solve_general(&config.reduced, &config.consts, &grid, &config.solver)?)
    }
}

fn warn_printed_flux_mode(config: &RunConfig) {
    if config.solver.bc_mode == BcMode::PaperNeumann {
        eprintln!(
            "warning: the printed flux at eta = a disagrees with the derivative of the closed form; \
             errors will not decrease under refinement"
        );
    }
}

fn cmd_solve(config: &RunConfig) -> Result<u8, CliError> {
    warn_printed_flux_mode(config);
    let result = solve(config)?;
    let mut w = sink(config)?;
    match config.format {
        Format::Csv => output::write_solution_csv(&mut w, &result, |tau, eta| {
            theta_general(tau, eta, &config.reduced, &config.consts).unwrap_or(f64::NAN)
        })?,
        Format::Json => output::write_solution_json(&mut w, &result)?,
    }
    w.flush()?;
    eprintln!(
        "N = {}, dtau = {:e}, steps = {}, error_inf = {:e}, error_l2 = {:e}",
        config.n_cells, result.dt, result.steps, result.error_inf, result.error_l2
    );
    Ok(if result.error_inf.is_finite() { 0 } else { 1 })
}

fn cmd_profile(config: &RunConfig) -> Result<u8, CliError> {
    if config.eta_points < 2 {
        return Err(CliError::Usage("--eta-points must be at least 2".into()));
    }
    let a = config.reduced.a;
    let etas = crate::verification::linspace(0.0, a, config.eta_points);
    let mut rows = Vec::with_capacity(config.taus.len() * etas.len());
    for &tau in &config.taus {
        for &eta in &etas {
            let theta = theta_general(tau, eta, &config.reduced, &config.consts)?;
            let dimensional = match &config.physical {
                Some(phys) => {
                    let (t, r) = from_reduced(tau, eta, phys);
                    Some((t, r, dimensional_t(t, r, phys, &config.consts)?))
                }
                None => None,
            };
            rows.push(output::ProfileRow {
                tau,
                eta,
                theta,
                dimensional,
            });
        }
    }
    let mut w = sink(config)?;
    match config.format {
        Format::Csv => output::write_profile_csv(&mut w, &rows)?,
        Format::Json => output::write_json(&mut w, &rows)?,
    }
    w.flush()?;
    Ok(0)
}

/// Refinement study over `config.levels`.
pub fn convergence(config: &RunConfig) -> Result<ConvergenceTable, CliError> {
    if config.levels.len() < 2 {
        return Err(CliError::Usage("a convergence study needs at least two levels".into()));
    }
    if config.levels.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CliError::Usage("levels must increase strictly".into()));
    }
    let a = config.reduced.a;
    for &n in &config.levels {
        Grid1D::new(n, a).map_err(|e| CliError::Usage(e.to_string()))?;
    }
    if config.is_paper_case() {
        let problem = PaperCaseProblem {
            c5: config.consts.c5,
            bc_mode: config.solver.bc_mode,
        };
        Ok(convergence_study(&problem, a, &config.levels, &config.solver)?)
    } else {
        let problem = GeneralProblem::new(config.reduced, config.consts, config.solver.bc_mode)
            .map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(convergence_study(&problem, a, &config.levels, &config.solver)?)
    }
}

fn cmd_convergence(config: &RunConfig) -> Result<u8, CliError> {
    warn_printed_flux_mode(config);
    let table = convergence(config)?;
    let mut w = sink(config)?;
    match config.format {
        Format::Csv => output::write_convergence_csv(&mut w, &table)?,
        Format::Json => output::write_json(&mut w, &table)?,
    }
    w.flush()?;
    let (lo, hi) = ORDER_RANGE;
    if config.solver.bc_mode == BcMode::PaperNeumann {
        eprintln!(
            "errors plateau near {:.3}: the printed outer flux is not the derivative of the solution it is compared with",
            table.rows.last().map_or(f64::NAN, |r| r.error_inf)
        );
        return Ok(1);
    }
    if table.orders_within(lo, hi) {
        Ok(0)
    } else {
        eprintln!("observed orders {:?} outside [{lo}, {hi}]", table.orders);
        Ok(1)
    }
}
