use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod config;
mod table;

use config::{CommonArgs, RunConfig};

/// Prabhakar fractional calculus: evaluation, operators, Sonine pairs and
/// relaxation, emitted as CSV.
#[derive(Debug, Parser)]
#[command(name = "prabhakar", version, allow_negative_numbers = true)]
struct Cli {
    #[command(flatten)]
    common: CommonArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the Prabhakar function, a kernel, or a kernel transform.
    Eval {
        #[arg(value_enum)]
        kind: EvalKind,
        /// Single argument for `function`; without it the grid [0, tmax] is used.
        #[arg(long, allow_negative_numbers = true)]
        z: Option<f64>,
        /// Which kernel `kernel` and `kernel-hat` refer to.
        #[arg(long, value_enum, default_value_t = KernelChoice::Integral)]
        of: KernelChoice,
    },
    /// Apply an operator to a built-in test function or sampled CSV.
    Operator {
        #[arg(value_enum)]
        kind: OperatorKind,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Report the parameter regions the quadruple belongs to.
    Classify,
    /// Solve D y = -xi y, y(0) = y0.
    Relax {
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        xi: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        y0: f64,
        #[arg(long, value_enum, default_value_t = RelaxMethod::Both)]
        method: RelaxMethod,
    },
    /// Check that the derivative and integral kernels form a Sonine pair.
    Sonine {
        /// Points of the log-spaced Laplace grid on [1e-3, 1e3].
        #[arg(long, default_value_t = 64)]
        points: usize,
    },
    /// Integer-order limits of the kernel and the derivative, by series.
    SeriesLimit {
        #[arg(long, value_enum, default_value_t = LimitKind::Derivative)]
        kind: LimitKind,
        /// Number of series terms.
        #[arg(long, default_value_t = 40)]
        terms: usize,
        #[command(flatten)]
        input: InputArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvalKind {
    Function,
    Kernel,
    KernelHat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelChoice {
    Integral,
    Derivative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OperatorKind {
    Integral,
    DerivativeRl,
    DerivativeCaputo,
    KochubeiD,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RelaxMethod {
    Series,
    Laplace,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LimitKind {
    Derivative,
    Kernel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TestFunction {
    Const,
    Ramp,
    Square,
    Sin,
}

#[derive(Debug, Clone, clap::Args)]
pub struct InputArgs {
    /// Built-in test function sampled on [0, tmax].
    #[arg(long = "f", value_enum, default_value_t = TestFunction::Ramp, conflicts_with = "input")]
    pub f: TestFunction,
    /// Two-column CSV (t, value) on a uniform grid from t = 0.
    #[arg(long)]
    pub input: Option<std::path::PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] prabhakar::Error),
    #[error("output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use prabhakar::Error as E;
        match self {
            CliError::Core(E::Consistency(_) | E::NonConvergence { .. } | E::Overflow(_)) => 3,
            _ => 2,
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = RunConfig::resolve(&cli.common)?;
    let mut buffer = Vec::new();
    match cli.command {
        Command::Eval { kind, z, of } => commands::eval(&cfg, kind, z, of)?.write_to(&mut buffer)?,
        Command::Operator { kind, input } => commands::operator(&cfg, kind, &input)?.write_to(&mut buffer)?,
        Command::Classify => buffer.extend(commands::classify(&cfg)?.into_bytes()),
        Command::Relax { xi, y0, method } => commands::relax(&cfg, xi, y0, method)?.write_to(&mut buffer)?,
        Command::Sonine { points } => buffer.extend(commands::sonine(&cfg, points)?.into_bytes()),
        Command::SeriesLimit { kind, terms, input } => {
            commands::series_limit(&cfg, kind, terms, &input)?.write_to(&mut buffer)?
        }
    }
    match &cfg.out {
        Some(path) => std::fs::write(path, buffer)?,
        None => std::io::stdout().lock().write_all(&buffer)?,
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
