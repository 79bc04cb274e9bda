//! The `dp3` command-line front-end.
//!
//! Every run is described by a [`RunConfig`], assembled from an optional JSON
//! file (`--config`) overlaid with the command-line flags. Results are written as
//! canonical JSON or as CSV with a header block. Exit codes: `0` on success, `1`
//! on usage, parameter or I/O errors, `2` when an enabled check fails.

mod commands;
pub mod config;
pub mod output;

pub use commands::run;
pub use config::{parse_complex, CommandKind, Format, OutputSpec, RunConfig, TauSpec};
pub use output::{reemit, Artifact, Cell, Header, Table};

use crate::error::Dp3Error;
use crate::monodromy::MonodromyPoint;
use crate::params::C64;
use clap::{Args, Parser, Subcommand};
use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;
use thiserror::Error;

/// Failures of a command-line run.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, configuration or combination of settings.
    #[error("{0}")]
    Usage(String),
    /// Reading or writing a file failed.
    #[error("i/o: {0}")]
    Io(String),
    /// The library rejected the request.
    #[error(transparent)]
    Library(#[from] Dp3Error),
}

/// Command-line interface.
#[derive(Debug, Parser)]
#[command(name = "dp3", version, about = "Trans-series asymptotics of the degenerate Painleve III equation")]
pub struct Cli {
    /// Sub-command; may instead be named by the `command` field of the config file.
    #[command(subcommand)]
    pub command: Option<Command>,
    /// Settings shared by every sub-command.
    #[command(flatten)]
    pub common: CommonArgs,
}

/// Settings accepted by every sub-command.
#[derive(Debug, Args)]
pub struct CommonArgs {
    /// JSON configuration file; flags override its fields.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Formal monodromy parameter, e.g. `0.3+0.1i`.
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_complex)]
    pub a: Option<C64>,
    /// Coupling `b`.
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_complex)]
    pub b: Option<C64>,
    /// Sign `ε`.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub eps: Option<i8>,
    /// Real-axis phase label of `εb`.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub eps2: Option<i8>,
    /// Imaginary-axis phase label of `εb`.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub eps2_hat: Option<i8>,
    /// Branch index `k`.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub k: Option<i8>,
    /// Truncation order.
    #[arg(long = "N", global = true)]
    pub n: Option<usize>,
    /// Regime label, e.g. `(0,0,0|0)` or `^(1,0,1|0)`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub regime: Option<String>,
    /// Single evaluation point.
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_complex)]
    pub tau: Option<C64>,
    /// First `|τ|` of a geometric ladder.
    #[arg(long, global = true)]
    pub tau_start: Option<f64>,
    /// Last `|τ|` of a geometric ladder.
    #[arg(long, global = true)]
    pub tau_stop: Option<f64>,
    /// Number of ladder points.
    #[arg(long, global = true)]
    pub tau_count: Option<usize>,
    /// Stokes multiplier `s⁰₀`.
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_complex)]
    pub s00: Option<C64>,
    /// Monodromy point as a JSON object.
    #[arg(long, global = true)]
    pub point: Option<String>,
    /// Case of a sampled point: `i`, `ii` or `iii`.
    #[arg(long, global = true)]
    pub case: Option<String>,
    /// Seed of sampled inputs.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output file; standard output when absent.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Output format: `json` or `csv`.
    #[arg(long, global = true)]
    pub format: Option<Format>,
    /// Tolerance override `name=value`; may be repeated.
    #[arg(long = "tol", global = true)]
    pub tolerances: Vec<String>,
}

/// Sub-commands.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coefficient table of one family.
    Coeffs {
        /// Family name: u, w, eta, r, d, htilde, nu, mu, p or a `_hat` twin.
        #[arg(long)]
        family: Option<String>,
        /// `ε₁` (real axis) or `ε̂₁` (hatted families).
        #[arg(long, allow_negative_numbers = true)]
        eps1: Option<i8>,
    },
    /// Truncated trans-series at one point or along a ladder.
    Eval {
        /// u, u_prime, f_minus, f_plus, hamiltonian, sigma or phi.
        #[arg(long)]
        quantity: Option<String>,
    },
    /// Case of a monodromy point and its manifold residuals.
    Classify,
    /// Symmetry labels and their action on a point.
    Symmetry {
        /// List all labels.
        #[arg(long)]
        enumerate: bool,
        /// Label to apply.
        #[arg(long, allow_hyphen_values = true)]
        label: Option<String>,
    },
    /// Verification checks, comma separated.
    Verify {
        /// instanton-exponent, residual-order, asymptotic-vs-ode, exponential-fit,
        /// identities, phase, exact-solution, manifold, symmetry.
        #[arg(long)]
        check: Option<String>,
    },
    /// Evaluation over regimes and a τ ladder, in parallel.
    Sweep {
        /// Regime label; may be repeated. Every admissible regime when absent.
        #[arg(long = "sweep-regime", allow_hyphen_values = true)]
        regimes: Vec<String>,
        /// Quantity to evaluate.
        #[arg(long)]
        quantity: Option<String>,
    },
    /// Reads an artifact and writes it again in canonical form.
    Reemit {
        /// Artifact to read.
        input: PathBuf,
    },
}

/// Runs the binary with `args` and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(true) => 0,
        Ok(false) => 2,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

/// Runs a parsed command line; `Ok(false)` means a check failed.
pub fn execute(cli: Cli) -> Result<bool, CliError> {
    if let Some(Command::Reemit { input }) = &cli.command {
        let text = std::fs::read_to_string(input)
            .map_err(|e| CliError::Io(format!("{}: {e}", input.display())))?;
        output::write_text(cli.common.output.as_deref(), &reemit(&text)?)?;
        return Ok(true);
    }
    let file = match &cli.common.config {
        Some(path) => RunConfig::from_file(path)?,
        None => RunConfig::default(),
    };
    let cfg = file.merged_with(flags_config(&cli)?);
    let (artifact, pass) = run(&cfg)?;
    let text = match cfg.format() {
        Format::Json => artifact.to_json()?,
        Format::Csv => artifact.to_csv()?,
    };
    let path = cfg.output.as_ref().and_then(|o| o.path.as_deref());
    output::write_text(path, &text)?;
    Ok(pass)
}

fn flags_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let c = &cli.common;
    let mut cfg = RunConfig {
        a: c.a,
        b: c.b,
        epsilon: c.eps,
        eps2: c.eps2,
        eps2_hat: c.eps2_hat,
        k: c.k,
        regime: c.regime.clone(),
        case: c.case.clone(),
        s00: c.s00,
        n: c.n,
        seed: c.seed,
        ..Default::default()
    };
    if let Some(p) = &c.point {
        let point: MonodromyPoint = serde_json::from_str(p)
            .map_err(|e| CliError::Usage(format!("malformed --point: {e}")))?;
        cfg.point = Some(point);
    }
    cfg.tau = match (c.tau, c.tau_start, c.tau_stop, c.tau_count) {
        (Some(t), None, None, None) => Some(TauSpec::Single(t)),
        (None, Some(start), Some(stop), count) => Some(TauSpec::Ladder {
            start,
            stop,
            count: count.unwrap_or(2),
        }),
        (None, None, None, None) => None,
        _ => {
            return Err(CliError::Usage(
                "give either --tau or --tau-start with --tau-stop (and optionally --tau-count)".into(),
            ))
        }
    };
    if c.output.is_some() || c.format.is_some() {
        cfg.output = Some(OutputSpec {
            path: c.output.clone(),
            format: c.format,
        });
    }
    cfg.tolerances = parse_tolerances(&c.tolerances)?;
    match &cli.command {
        Some(Command::Coeffs { family, eps1 }) => {
            cfg.command = Some(CommandKind::Coeffs);
            cfg.family = family.clone();
            cfg.eps1 = *eps1;
        }
        Some(Command::Eval { quantity }) => {
            cfg.command = Some(CommandKind::Eval);
            cfg.quantity = quantity.clone();
        }
        Some(Command::Classify) => cfg.command = Some(CommandKind::Classify),
        Some(Command::Symmetry { enumerate, label }) => {
            cfg.command = Some(CommandKind::Symmetry);
            cfg.enumerate = enumerate.then_some(true);
            cfg.label = label.clone();
        }
        Some(Command::Verify { check }) => {
            cfg.command = Some(CommandKind::Verify);
            cfg.check = check.clone();
        }
        Some(Command::Sweep { regimes, quantity }) => {
            cfg.command = Some(CommandKind::Sweep);
            if !regimes.is_empty() {
                cfg.regimes = Some(regimes.clone());
            }
            cfg.quantity = quantity.clone();
        }
        Some(Command::Reemit { .. }) | None => {}
    }
    Ok(cfg)
}

fn parse_tolerances(items: &[String]) -> Result<BTreeMap<String, f64>, CliError> {
    items
        .iter()
        .map(|s| {
            let (k, v) = s
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("--tol expects name=value, got {s:?}")))?;
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("--tol value {v:?} is not a number")))?;
            Ok((k.trim().to_string(), v))
        })
        .collect()
}
