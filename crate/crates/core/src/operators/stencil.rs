use super::grid::GridFunction;
use crate::error::{Error, Result};

/// `D^order f` by repeated fourth-order finite differences: centred in the
/// interior, one-sided five-point stencils at the two nodes nearest each end.
pub fn numerical_derivative(f: &GridFunction, order: u32) -> Result<GridFunction> {
    let required = 4 * order.max(1) as usize;
    if f.n() < required {
        return Err(Error::GridTooCoarse {
            intervals: f.n(),
            required,
        });
    }
    let mut v = f.values().to_vec();
    for _ in 0..order {
        v = first_derivative(&v, f.h());
    }
    f.with_values(v)
}

fn first_derivative(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len() - 1;
    let s = 1.0 / (12.0 * h);
    let mut d = vec![0.0; n + 1];
    d[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) * s;
    d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) * s;
    for i in 2..n - 1 {
        d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) * s;
    }
    d[n - 1] = (3.0 * f[n] + 10.0 * f[n - 1] - 18.0 * f[n - 2] + 6.0 * f[n - 3] - f[n - 4]) * s;
    d[n] = (25.0 * f[n] - 48.0 * f[n - 1] + 36.0 * f[n - 2] - 16.0 * f[n - 3] + 3.0 * f[n - 4]) * s;
    d
}
