use crate::error::{Error, Result};

/// Samples of a function on the uniform grid `t_j = j·t_max/n`, `j = 0..=n`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    t_max: f64,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(t_max: f64, values: Vec<f64>) -> Result<Self> {
        if !(t_max > 0.0) || !t_max.is_finite() {
            return Err(Error::InvalidGrid(format!("time horizon must be positive, got {t_max}")));
        }
        if values.len() < 3 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 intervals, got {}",
                values.len().saturating_sub(1)
            )));
        }
        if let Some(j) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidGrid(format!("non-finite sample {} at node {j}", values[j])));
        }
        Ok(GridFunction { t_max, values })
    }

    pub fn from_fn(t_max: f64, n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        let h = t_max / n as f64;
        GridFunction::new(t_max, (0..=n).map(|j| f(j as f64 * h)).collect())
    }

    pub fn zeros(t_max: f64, n: usize) -> Result<Self> {
        GridFunction::new(t_max, vec![0.0; n + 1])
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    /// Number of intervals.
    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn h(&self) -> f64 {
        self.t_max / self.n() as f64
    }

    pub fn t(&self, j: usize) -> f64 {
        j as f64 * self.h()
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        let h = self.h();
        (0..self.values.len()).map(move |j| j as f64 * h)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Same grid, new samples.
    pub fn with_values(&self, values: Vec<f64>) -> Result<Self> {
        if values.len() != self.values.len() {
            return Err(Error::InvalidGrid(format!(
                "expected {} samples, got {}",
                self.values.len(),
                values.len()
            )));
        }
        GridFunction::new(self.t_max, values)
    }

    pub fn same_grid(&self, other: &GridFunction) -> bool {
        self.t_max == other.t_max && self.values.len() == other.values.len()
    }

    pub fn scaled_add(&self, a: f64, other: &GridFunction, b: f64) -> Result<Self> {
        if !self.same_grid(other) {
            return Err(Error::InvalidGrid("grids differ".into()));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| a * x + b * y)
            .collect();
        GridFunction::new(self.t_max, values)
    }
}

/// Operator output with a per-node trust flag.
///
/// Derivative-type operators cannot produce a meaningful value at the
/// origin, and one-sided stencils degrade the last node; those nodes are
/// flagged instead of fabricated.
#[derive(Debug, Clone, PartialEq)]
pub struct MaskedGrid {
    pub values: GridFunction,
    pub valid: Vec<bool>,
}

impl MaskedGrid {
    pub fn all_valid(values: GridFunction) -> Self {
        let valid = vec![true; values.values().len()];
        MaskedGrid { values, valid }
    }

    pub(crate) fn masked(values: GridFunction, invalid: &[usize]) -> Self {
        let mut valid = vec![true; values.values().len()];
        for &j in invalid {
            if let Some(v) = valid.get_mut(j) {
                *v = false;
            }
        }
        MaskedGrid { values, valid }
    }

    /// `(t_j, value_j)` over trusted nodes.
    pub fn valid_points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.values
            .nodes()
            .zip(self.values.values().iter().copied())
            .zip(&self.valid)
            .filter(|(_, &ok)| ok)
            .map(|(p, _)| p)
    }

    /// Largest `|value - f(t)|` over trusted nodes with `t >= t_min`.
    pub fn max_error_against(&self, t_min: f64, f: impl Fn(f64) -> f64) -> f64 {
        self.valid_points()
            .filter(|(t, _)| *t >= t_min)
            .map(|(t, v)| (v - f(t)).abs())
            .fold(0.0, f64::max)
    }
}
