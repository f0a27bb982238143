//! The relaxation problem `D_(k) y = -ξ y`, `y(0) = y0`, with the Prabhakar
//! derivative kernel `k = e^{-γ}_{α,1-β}(λ; ·)`.
//!
//! In the Laplace domain the solution is `ŷ = y0 k̃ / (s k̃ + ξ)`. Expanding
//! in powers of `ξ` and inverting term by term gives
//!
//! ```text
//! y(t) = y0 Σ_n (-ξ)^n t^{βn} E^{γn}_{α,βn+1}(λ t^α).
//! ```
//!
//! The series is summed directly where its rounding error is under control
//! and replaced by numerical inversion of `ŷ` beyond that horizon.

use num_complex::Complex64;

use crate::analysis::{classify, cm_check, CMReport};
use crate::error::{Error, Result};
use crate::operators::{GridFunction, KernelCombination, MaskedGrid};
use crate::special::{prabhakar_e, reciprocal_gamma, PrabhakarKernel, PrabhakarParams};
use crate::transforms::{
    invert_laplace, kernel_hat_derivative, kernel_hat_derivative_complex, InversionConfig, LaplaceSpec,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelaxationProblem {
    pub params: PrabhakarParams,
    pub xi: f64,
    pub y0: f64,
    pub t_max: f64,
    pub n: usize,
}

impl RelaxationProblem {
    /// `ξ = 0` is accepted and gives the constant solution.
    pub fn new(params: PrabhakarParams, xi: f64, y0: f64, t_max: f64, n: usize) -> Result<Self> {
        if !(xi >= 0.0) || !xi.is_finite() {
            return Err(Error::InvalidParameter {
                name: "xi",
                value: xi,
                condition: "ξ>0",
            });
        }
        if !y0.is_finite() {
            return Err(Error::InvalidParameter {
                name: "y0",
                value: y0,
                condition: "y0 finite",
            });
        }
        if !params.in_sonine_window() {
            return Err(Error::InvalidParameter {
                name: "beta",
                value: params.beta,
                condition: "0<β<1",
            });
        }
        GridFunction::zeros(t_max, n)?;
        Ok(RelaxationProblem {
            params,
            xi,
            y0,
            t_max,
            n,
        })
    }

    fn grid(&self, values: Vec<f64>) -> Result<GridFunction> {
        GridFunction::new(self.t_max, values)
    }

    fn h(&self) -> f64 {
        self.t_max / self.n as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Series,
    LaplaceInversion,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelaxationSolution {
    pub y: GridFunction,
    pub method: Method,
    /// `max |y_series - y_laplace| / |y0|` over nodes `t > 0`, when both ran.
    pub cross_residual: Option<f64>,
    pub cm: CMReport,
    /// First node where the series handed over to inversion.
    pub series_horizon: Option<f64>,
}

/// Default number of differences checked for complete monotonicity.
pub const CM_ORDER: u32 = 6;
/// Default cap on series terms.
pub const SERIES_TERMS: usize = 400;
/// Largest tolerated `|y_series - y_laplace| / |y0|`.
pub const CROSS_TOLERANCE: f64 = 1e-4;

/// Estimated rounding plus truncation error, relative to `|y0|`, above which
/// a series node is handed over to inversion.
const SERIES_TRUST: f64 = 1e-10;

/// `y0 k̃(s) / (s k̃(s) + ξ)` for real `s > 0`.
pub fn solution_hat(prob: &RelaxationProblem, s: f64) -> Result<f64> {
    let k = kernel_hat_derivative(&prob.params, s)?;
    Ok(prob.y0 * k / (s * k + prob.xi))
}

pub fn solution_hat_complex(prob: &RelaxationProblem, s: Complex64) -> Complex64 {
    let k = kernel_hat_derivative_complex(&prob.params, s);
    prob.y0 * k / (s * k + prob.xi)
}

/// Orders `0..=6` (fewer on grids too coarse for that) of `sign(y0)·y`.
fn cm_of(prob: &RelaxationProblem, y: &GridFunction) -> Result<CMReport> {
    let sign = if prob.y0 < 0.0 { -1.0 } else { 1.0 };
    let oriented = y.with_values(y.values().iter().map(|v| sign * v).collect())?;
    let order = CM_ORDER.min((y.n() / 4) as u32);
    cm_check(&oriented, order, 1e-8 * prob.y0.abs())
}

/// Series value at `t` with an error estimate relative to `|y0|`, or `None`
/// when the terms did not settle within `terms` or one could not be evaluated.
fn series_at(prob: &RelaxationProblem, t: f64, terms: usize) -> Result<Option<(f64, f64)>> {
    let p = &prob.params;
    let z = p.lambda * t.powf(p.alpha);
    let x = prob.xi * t.powf(p.beta);
    let mut sum = 0.0;
    let mut err = 0.0;
    let mut power = 1.0;
    let mut quiet = 0;
    for n in 0..terms {
        let nf = n as f64;
        let (e, diag) = match prabhakar_e(p.alpha, p.beta * nf + 1.0, p.gamma * nf, z) {
            Ok(v) => v,
            Err(Error::Overflow(_) | Error::NonConvergence { .. } | Error::OutOfRadius { .. }) => return Ok(None),
            Err(e) => return Err(e),
        };
        let term = power * e;
        sum += term;
        err += power.abs() * diag.error_estimate + f64::EPSILON * term.abs();
        // bound on the size of the next terms, from the leading factor
        let scale = x.powi(n as i32 + 1) * reciprocal_gamma(p.beta * (nf + 1.0) + 1.0);
        if term.abs() <= 1e-17 && scale <= 1e-17 {
            quiet += 1;
            if quiet >= 3 {
                return Ok(Some((sum, err)));
            }
        } else {
            quiet = 0;
        }
        power *= -x;
        if !power.is_finite() {
            return Ok(None);
        }
    }
    Ok(None)
}

/// Term-by-term series solution with a runtime horizon guard.
///
/// Nodes are summed in increasing `t`. From the first node where the series
/// fails to settle in `terms` terms, or its estimated error exceeds
/// `1e-10·|y0|`, the remaining nodes come from [`solve_laplace`] and the
/// switch point is recorded in `series_horizon`.
pub fn solve_series(prob: &RelaxationProblem, terms: usize) -> Result<RelaxationSolution> {
    if terms < 2 {
        return Err(Error::Domain(format!("series solution needs at least 2 terms, got {terms}")));
    }
    let h = prob.h();
    let mut values = vec![prob.y0; prob.n + 1];
    let mut horizon = None;
    if prob.xi != 0.0 && prob.y0 != 0.0 {
        for (i, slot) in values.iter_mut().enumerate().skip(1) {
            match series_at(prob, i as f64 * h, terms)? {
                Some((v, err)) if err <= SERIES_TRUST => *slot = prob.y0 * v,
                _ => {
                    horizon = Some(i);
                    break;
                }
            }
        }
    }
    if let Some(start) = horizon {
        let spec = solution_spec(prob);
        let cfg = InversionConfig::default();
        for (i, slot) in values.iter_mut().enumerate().skip(start) {
            *slot = invert_laplace(&spec, i as f64 * h, &cfg)?;
        }
    }
    let y = prob.grid(values)?;
    Ok(RelaxationSolution {
        cm: cm_of(prob, &y)?,
        y,
        method: Method::Series,
        cross_residual: None,
        series_horizon: horizon.map(|i| i as f64 * h),
    })
}

fn solution_spec(prob: &RelaxationProblem) -> LaplaceSpec {
    let prob = *prob;
    LaplaceSpec::new("relaxation solution", move |s| solution_hat_complex(&prob, s))
}

/// Inversion of [`solution_hat`] at every node `t > 0`; node 0 is `y0`.
pub fn solve_laplace(prob: &RelaxationProblem, cfg: &InversionConfig) -> Result<RelaxationSolution> {
    let spec = solution_spec(prob);
    let h = prob.h();
    let mut values = vec![prob.y0; prob.n + 1];
    if prob.y0 != 0.0 {
        for (i, slot) in values.iter_mut().enumerate().skip(1) {
            *slot = invert_laplace(&spec, i as f64 * h, cfg)?;
        }
    }
    let y = prob.grid(values)?;
    Ok(RelaxationSolution {
        cm: cm_of(prob, &y)?,
        y,
        method: Method::LaplaceInversion,
        cross_residual: None,
        series_horizon: None,
    })
}

/// Runs both solvers and checks them against each other and, inside the
/// region where the theory guarantees it, against complete monotonicity.
///
/// Returns the series solution with `cross_residual` filled in. Fails with
/// [`Error::Consistency`] when the solvers disagree by more than
/// [`CROSS_TOLERANCE`], or when the parameters are admissible and the
/// monotonicity check fails.
pub fn validate_relaxation(prob: &RelaxationProblem) -> Result<RelaxationSolution> {
    let series = solve_series(prob, SERIES_TERMS)?;
    let laplace = solve_laplace(prob, &InversionConfig::default())?;
    let cross = cross_residual(prob, &series.y, &laplace.y);
    if !(cross <= CROSS_TOLERANCE) {
        return Err(Error::Consistency(format!(
            "series and inversion disagree by {cross:e} (relative to |y0|)"
        )));
    }
    if classify(&prob.params).gfc_compatible && !series.cm.passed {
        let (order, node, value) = series.cm.violations[0];
        return Err(Error::Consistency(format!(
            "solution is not completely monotone: difference of order {order} at node {node} is {value:e}"
        )));
    }
    Ok(RelaxationSolution {
        cross_residual: Some(cross),
        ..series
    })
}

/// `max |a - b| / |y0|` over nodes `t > 0`; zero when `y0 = 0`.
pub fn cross_residual(prob: &RelaxationProblem, a: &GridFunction, b: &GridFunction) -> f64 {
    if prob.y0 == 0.0 {
        return 0.0;
    }
    let worst = a.values()[1..]
        .iter()
        .zip(&b.values()[1..])
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    worst / prob.y0.abs()
}

/// `max |D y + ξ y|` over the trusted nodes of the derivative `d` of `y`.
pub fn closure_residual(prob: &RelaxationProblem, y: &GridFunction, d: &MaskedGrid) -> f64 {
    d.values
        .values()
        .iter()
        .zip(y.values())
        .zip(&d.valid)
        .filter(|(_, &ok)| ok)
        .map(|((dv, yv), _)| (dv + prob.xi * yv).abs())
        .fold(0.0, f64::max)
}

/// `y'` as the kernel combination `y0 Σ_{n≥1} (-ξ)^n e^{γn}_{α,βn}(λ; ·)`.
///
/// Truncation uses the size of the matching solution terms at `t_max`.
/// Fails when the terms do not settle within `max_terms`, or when their
/// magnitudes exceed the sum by so much that cancellation would leave fewer
/// than about ten correct digits.
pub fn solution_derivative(prob: &RelaxationProblem, max_terms: usize) -> Result<KernelCombination> {
    let p = &prob.params;
    let mut terms = Vec::new();
    let mut c = prob.y0;
    let mut magnitude = 0.0;
    let mut quiet = 0;
    for n in 1..=max_terms {
        c *= -prob.xi;
        let nf = n as f64;
        let k = PrabhakarKernel::new(p.alpha, p.beta * nf, p.gamma * nf, p.lambda)?;
        let size = (c * k.antiderivative(prob.t_max, 1)?).abs();
        terms.push((c, k));
        magnitude += size;
        if magnitude > 1e5 * prob.y0.abs() {
            return Err(Error::Domain(format!(
                "derivative series cancels too strongly on [0, {}]; shorten the horizon",
                prob.t_max
            )));
        }
        if size <= 1e-17 * prob.y0.abs() {
            quiet += 1;
            if quiet >= 3 {
                return Ok(KernelCombination { terms });
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergence {
        terms: max_terms,
        last_term: terms.last().map_or(0.0, |(c, _)| c.abs()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[allow(clippy::too_many_arguments)]
    fn problem(a: f64, b: f64, g: f64, l: f64, xi: f64, y0: f64, t_max: f64, n: usize) -> RelaxationProblem {
        RelaxationProblem::new(PrabhakarParams::new(a, b, g, l).unwrap(), xi, y0, t_max, n).unwrap()
    }

    #[test]
    fn transform_examples() {
        let prob = problem(0.5, 0.5, 0.0, -1.0, 1.0, 2.0, 1.0, 8);
        for s in [0.3_f64, 1.0, 7.0] {
            let expect = 2.0 * s.powf(-0.5) / (s.sqrt() + 1.0);
            assert_relative_eq!(solution_hat(&prob, s).unwrap(), expect, max_relative = 1e-14);
        }
        let still = problem(0.5, 0.5, -0.8, -1.0, 0.0, 2.0, 1.0, 8);
        assert_relative_eq!(solution_hat(&still, 3.0).unwrap(), 2.0 / 3.0, max_relative = 1e-14);
        let p = problem(0.5, 0.5, -0.8, -1.0, 1.0, 2.0, 1.0, 8);
        assert_relative_eq!(1e12 * solution_hat(&p, 1e12).unwrap(), 2.0, max_relative = 1e-5);
    }

    #[test]
    fn series_matches_mittag_leffler() {
        let prob = problem(0.7, 0.5, 0.0, -1.0, 1.0, 1.0, 3.0, 60);
        let sol = solve_series(&prob, SERIES_TERMS).unwrap();
        assert!(sol.series_horizon.is_none());
        for (t, v) in sol.y.nodes().zip(sol.y.values()) {
            let (ml, _) = prabhakar_e(0.5, 1.0, 1.0, -t.sqrt()).unwrap();
            assert_relative_eq!(*v, ml, max_relative = 1e-12);
        }
    }

    #[test]
    fn zero_rate_and_zero_start_are_constant() {
        let prob = problem(0.5, 0.5, -0.8, -1.0, 0.0, 1.5, 2.0, 20);
        let sol = solve_series(&prob, 10).unwrap();
        assert!(sol.y.values().iter().all(|&v| v == 1.5));
        let prob = problem(0.5, 0.5, -0.8, -1.0, 1.0, 0.0, 2.0, 20);
        let sol = validate_relaxation(&prob).unwrap();
        assert!(sol.y.values().iter().all(|&v| v == 0.0) && sol.cm.passed);
    }

    #[test]
    fn solvers_agree_at_admissible_point() {
        let prob = problem(0.5, 0.5, -0.8, -1.0, 1.0, 1.0, 5.0, 100);
        let sol = validate_relaxation(&prob).unwrap();
        assert!(sol.cross_residual.unwrap() <= 1e-6);
        assert!(sol.cm.passed);
        assert_eq!(sol.y.values()[0], 1.0);
    }

    #[test]
    fn near_unit_order_is_close_to_exponential() {
        let prob = problem(0.5, 0.99, 0.0, -1.0, 1.0, 1.0, 3.0, 60);
        let sol = solve_laplace(&prob, &InversionConfig::default()).unwrap();
        let worst = sol
            .y
            .nodes()
            .zip(sol.y.values())
            .map(|(t, v)| (v - (-t).exp()).abs())
            .fold(0.0, f64::max);
        assert!(worst <= 2e-2);
    }

    #[test]
    fn fast_relaxation_decays_early() {
        let prob = problem(0.5, 0.5, 0.0, -1.0, 1e3, 1.0, 0.1, 20);
        let sol = solve_laplace(&prob, &InversionConfig::default()).unwrap();
        assert!(sol.y.values()[20] < 0.01);
    }

    #[test]
    fn large_rate_hands_over_to_inversion() {
        let prob = problem(0.5, 0.5, 0.0, -1.0, 40.0, 1.0, 4.0, 40);
        let sol = solve_series(&prob, SERIES_TERMS).unwrap();
        let horizon = sol.series_horizon.expect("series should give up");
        assert!(horizon > 0.0 && horizon < 4.0);
        let reference = solve_laplace(&prob, &InversionConfig::default()).unwrap();
        assert!(cross_residual(&prob, &sol.y, &reference.y) < 1e-8);
    }

    #[test]
    fn solution_is_linear_in_initial_value() {
        let unit = solve_series(&problem(0.6, 0.4, -0.5, -1.2, 0.8, 1.0, 2.0, 40), 100).unwrap();
        let scaled = solve_series(&problem(0.6, 0.4, -0.5, -1.2, 0.8, -3.5, 2.0, 40), 100).unwrap();
        for (a, b) in unit.y.values().iter().zip(scaled.y.values()) {
            assert_relative_eq!(-3.5 * a, *b, max_relative = 1e-15);
        }
        assert!(scaled.cm.passed);
    }

    #[test]
    fn rejects_bad_problems() {
        let p = PrabhakarParams::new(0.5, 1.2, -0.8, -1.0).unwrap();
        assert!(RelaxationProblem::new(p, 1.0, 1.0, 1.0, 10).is_err());
        let p = PrabhakarParams::new(0.5, 0.5, -0.8, -1.0).unwrap();
        assert!(RelaxationProblem::new(p, -1.0, 1.0, 1.0, 10).is_err());
        assert!(RelaxationProblem::new(p, 1.0, 1.0, 1.0, 1).is_err());
    }
}
