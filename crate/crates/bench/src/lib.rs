//! Shared fixtures for the criterion benches.

use prabhakar::{GridFunction, PrabhakarParams};

/// Parameters inside the region where the relaxation is completely monotonic.
pub fn admissible_params() -> PrabhakarParams {
    PrabhakarParams::new(0.5, 0.5, -0.8, -1.0).expect("valid parameters")
}

pub fn sine_grid(t_max: f64, n: usize) -> GridFunction {
    GridFunction::from_fn(t_max, n, f64::sin).expect("valid grid")
}
