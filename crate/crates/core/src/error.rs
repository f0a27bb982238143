use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter violates a standing assumption; `condition` names it.
    #[error("invalid parameter {name} = {value}: requires {condition}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        condition: &'static str,
    },

    #[error("gamma function pole at x = {0}")]
    GammaPole(f64),

    #[error("series argument |z| = {z} exceeds the radius {radius}")]
    OutOfRadius { z: f64, radius: f64 },

    #[error("series did not converge after {terms} terms (last term {last_term:e})")]
    NonConvergence { terms: usize, last_term: f64 },

    #[error("{0}: value overflowed the floating-point range")]
    Overflow(&'static str),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("branch error: 1 - lambda*s^(-alpha) = {0} is not positive")]
    Branch(f64),

    #[error("unsupported case: {0}")]
    Unsupported(String),

    #[error("integer order beta = {0} leaves the locally integrable kernels; use the series-limit operator")]
    IntegerOrder(f64),

    #[error("grid too coarse: {intervals} intervals, need at least {required}")]
    GridTooCoarse { intervals: usize, required: usize },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("consistency check failed: {0}")]
    Consistency(String),
}
