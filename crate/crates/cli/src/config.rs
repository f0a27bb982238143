//! Run configuration: built-in defaults, overridden by a key=value file,
//! overridden by command-line flags.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use clap::Args;
use prabhakar::PrabhakarParams;

use crate::CliError;

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Order α of the Prabhakar function.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Index β of the kernel.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    /// Exponent γ.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    /// Argument scale λ in E(λ t^α).
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    /// End of the time grid [0, tmax].
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub tmax: Option<f64>,
    /// Number of grid intervals.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Relative truncation tolerance of the Prabhakar series.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub tol: Option<f64>,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Plain-text key=value file; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub lambda: f64,
    pub t_max: f64,
    pub n: usize,
    pub tol: f64,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            alpha: 0.5,
            beta: 0.5,
            gamma: -0.8,
            lambda: -1.0,
            t_max: 1.0,
            n: 256,
            tol: 1e-15,
            out: None,
        }
    }
}

const KEYS: [&str; 8] = ["alpha", "beta", "gamma", "lambda", "tmax", "n", "tol", "out"];

impl RunConfig {
    pub fn resolve(args: &CommonArgs) -> Result<Self, CliError> {
        let mut cfg = RunConfig::default();
        if let Some(path) = &args.config {
            cfg.apply_file(path)?;
        }
        macro_rules! take {
            ($field:ident, $flag:ident) => {
                if let Some(v) = args.$flag.clone() {
                    cfg.$field = v;
                }
            };
        }
        take!(alpha, alpha);
        take!(beta, beta);
        take!(gamma, gamma);
        take!(lambda, lambda);
        take!(t_max, tmax);
        take!(n, n);
        take!(tol, tol);
        if args.out.is_some() {
            cfg.out = args.out.clone();
        }
        Ok(cfg)
    }

    fn apply_file(&mut self, path: &Path) -> Result<(), CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        for (key, value) in parse_pairs(&text)? {
            let number = || {
                value
                    .parse::<f64>()
                    .map_err(|_| CliError::Usage(format!("config key {key}: not a number: {value}")))
            };
            match key.as_str() {
                "alpha" => self.alpha = number()?,
                "beta" => self.beta = number()?,
                "gamma" => self.gamma = number()?,
                "lambda" => self.lambda = number()?,
                "tmax" => self.t_max = number()?,
                "tol" => self.tol = number()?,
                "n" => {
                    self.n = value
                        .parse()
                        .map_err(|_| CliError::Usage(format!("config key n: not a count: {value}")))?
                }
                "out" => self.out = Some(PathBuf::from(value)),
                _ => unreachable!(),
            }
        }
        Ok(())
    }

    pub fn params(&self) -> Result<PrabhakarParams, CliError> {
        Ok(PrabhakarParams::new(self.alpha, self.beta, self.gamma, self.lambda)?)
    }
}

/// `key=value` lines; blank lines and text after `#` are ignored.
pub fn parse_pairs(text: &str) -> Result<HashMap<String, String>, CliError> {
    let mut pairs = HashMap::new();
    for (number, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected key=value", number + 1)))?;
        let key = key.trim().to_string();
        if !KEYS.contains(&key.as_str()) {
            return Err(CliError::Usage(format!(
                "config line {}: unknown key {key} (known: {})",
                number + 1,
                KEYS.join(", ")
            )));
        }
        pairs.insert(key, value.trim().to_string());
    }
    Ok(pairs)
}
