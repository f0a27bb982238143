//! Region classification, Sonine-pair residuals, complete-monotonicity
//! screening and the integer-order series limits.

use crate::error::{Error, Result};
use crate::operators::{
    convolve_pair_both, default_local_cells, numerical_derivative, rl_integral, GridFunction,
};
use crate::special::{gelfand_shilov, PrabhakarKernel, PrabhakarParams};
use crate::transforms::{
    kernel_hat_derivative, kernel_hat_integral, stieltjes_limit_flags, strictly_negative,
    strictly_positive, LimitFlags, BOUNDARY_TOL,
};

/// The exponent combinations the region inequalities are built from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Witnesses {
    /// `β - 1 - αγ`, the small-`s` exponent of `k̃`.
    pub beta_minus_one_minus_alpha_gamma: f64,
    /// `β - αγ`.
    pub beta_minus_alpha_gamma: f64,
    /// `-αγ`.
    pub minus_alpha_gamma: f64,
    /// `1 - β`.
    pub one_minus_beta: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationReport {
    pub params: PrabhakarParams,
    /// `0 < β < 1`.
    pub sonine_window: bool,
    /// `None` for `λ > 0`.
    pub limit_flags: Option<LimitFlags>,
    /// `0 < β < 1` and `-αγ < 1 - β < 1 - αγ`, with margin [`BOUNDARY_TOL`].
    pub ineq1_strict: bool,
    /// The same with both inner comparisons relaxed to `≤`.
    pub ineq1_weak: bool,
    /// `λ < 0`, `0 < α ≤ 1`, `0 < -αγ ≤ 1 - β ≤ 1`.
    pub ineq2_cm_sufficient: bool,
    /// `λ < 0`, `0 < α ≤ 1`, `γ < 0`, `0 < β < 1`, `-αγ ≤ 1 - β ≤ 1`.
    pub gfc_compatible: bool,
    /// `γ = 0` or `λ = 0`: both kernels are Gel'fand-Shilov functions.
    pub degenerate: bool,
    /// The weak form of the first region holds but the strict one fails.
    pub on_boundary: bool,
    pub witnesses: Witnesses,
}

fn le(a: f64, b: f64) -> bool {
    b - a >= -BOUNDARY_TOL
}

fn lt(a: f64, b: f64) -> bool {
    strictly_positive(b - a)
}

/// Evaluates every region by direct inequality arithmetic.
///
/// The first region concerns the factor `(1 - λ s^{-α})^γ`, which is
/// identically one when `λ = 0` or `γ = 0`; there `γ` enters as zero.
/// Otherwise, for `λ > 0`, that region is not defined and reported false.
pub fn classify(p: &PrabhakarParams) -> ClassificationReport {
    let (a, b, g, l) = (p.alpha, p.beta, p.gamma, p.lambda);
    let nag = -a * g;
    let witnesses = Witnesses {
        beta_minus_one_minus_alpha_gamma: b - 1.0 - a * g,
        beta_minus_alpha_gamma: b - a * g,
        minus_alpha_gamma: nag,
        one_minus_beta: 1.0 - b,
    };
    let sonine_window = p.in_sonine_window();
    let degenerate = g == 0.0 || l == 0.0;

    let nag_eff = if l == 0.0 { 0.0 } else { nag };
    let ineq1 = |cmp: fn(f64, f64) -> bool| {
        (l <= 0.0 || g == 0.0) && sonine_window && cmp(nag_eff, 1.0 - b) && cmp(1.0 - b, 1.0 + nag_eff)
    };
    let ineq1_strict = ineq1(lt);
    let ineq1_weak = ineq1(le);

    let lambda_negative = strictly_negative(l);
    let alpha_ok = a > 0.0 && le(a, 1.0);
    let upper = le(nag, 1.0 - b) && le(1.0 - b, 1.0);
    let ineq2_cm_sufficient = lambda_negative && alpha_ok && strictly_positive(nag) && upper;
    // γ < 0 is tested through -αγ > 0 so that this region nests in the previous one
    let gfc_compatible = lambda_negative && alpha_ok && strictly_positive(nag) && sonine_window && upper;

    ClassificationReport {
        params: *p,
        sonine_window,
        limit_flags: stieltjes_limit_flags(p).ok(),
        ineq1_strict,
        ineq1_weak,
        ineq2_cm_sufficient,
        gfc_compatible,
        degenerate,
        on_boundary: ineq1_weak && !ineq1_strict,
        witnesses,
    }
}

fn require_window(p: &PrabhakarParams) -> Result<()> {
    if p.in_sonine_window() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "beta",
            value: p.beta,
            condition: "0<β<1",
        })
    }
}

/// `max_i |(k ⋆ κ)(t_i) - 1|` over `i ≥ 1` for the derivative kernel `k`
/// and the integral kernel `κ`.
///
/// Both kernels are singular at the origin, so each node is computed by
/// [`convolve_pair_both`]; the larger residual of the two splits is returned.
pub fn sonine_check_time(p: &PrabhakarParams, t_max: f64, n: usize) -> Result<f64> {
    require_window(p)?;
    let k = PrabhakarKernel::derivative(p)?;
    let kappa = PrabhakarKernel::integral(p);
    let splits = convolve_pair_both(&k, &kappa, t_max, n, default_local_cells(n))?;
    Ok(splits
        .iter()
        .flat_map(|values| &values[1..])
        .fold(0.0, |m: f64, v| m.max((v - 1.0).abs())))
}

/// `max |s k̃(s) κ̃(s) - 1|` over `count` log-spaced points of `[s_min, s_max]`.
pub fn sonine_check_laplace(p: &PrabhakarParams, s_min: f64, s_max: f64, count: usize) -> Result<f64> {
    require_window(p)?;
    if !(s_min > 0.0 && s_max > s_min) || count < 2 {
        return Err(Error::Domain(format!(
            "need 0 < s_min < s_max and at least 2 points, got [{s_min}, {s_max}] x {count}"
        )));
    }
    let step = (s_max / s_min).ln() / (count - 1) as f64;
    let mut worst: f64 = 0.0;
    for j in 0..count {
        let s = s_min * (step * j as f64).exp();
        let product = s * kernel_hat_derivative(p, s)? * kernel_hat_integral(p, s)?;
        worst = worst.max((product - 1.0).abs());
    }
    Ok(worst)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CMReport {
    pub max_order_checked: u32,
    /// `(order, node, (-1)^order Δ^order y)` wherever that falls below `-tol`.
    pub violations: Vec<(u32, usize, f64)>,
    pub passed: bool,
}

pub const CM_MAX_ORDER: u32 = 8;

/// Necessary condition for complete monotonicity on the samples:
/// `(-1)^j Δ^j y_i ≥ -tol` for forward differences of orders `0..=max_order`.
pub fn cm_check(y: &GridFunction, max_order: u32, tol: f64) -> Result<CMReport> {
    if max_order > CM_MAX_ORDER {
        return Err(Error::Domain(format!(
            "difference order {max_order} exceeds {CM_MAX_ORDER}"
        )));
    }
    let required = 4 * max_order.max(1) as usize;
    if y.n() < required {
        return Err(Error::GridTooCoarse {
            intervals: y.n(),
            required,
        });
    }
    let mut diff = y.values().to_vec();
    let mut violations = Vec::new();
    for order in 0..=max_order {
        if order > 0 {
            diff = diff.windows(2).map(|w| w[1] - w[0]).collect();
        }
        let sign = if order % 2 == 0 { 1.0 } else { -1.0 };
        for (i, d) in diff.iter().enumerate() {
            let v = sign * d;
            if v < -tol {
                violations.push((order, i, v));
            }
        }
    }
    Ok(CMReport {
        max_order_checked: max_order,
        passed: violations.is_empty(),
        violations,
    })
}

/// The weights `(-γ)_k λ^k / k!` for `k = 1..=count`.
fn limit_weights(p: &PrabhakarParams, count: usize) -> Vec<f64> {
    let mut w = Vec::with_capacity(count);
    let mut c = 1.0;
    for k in 1..=count {
        c *= (-p.gamma + (k - 1) as f64) * p.lambda / k as f64;
        w.push(c);
    }
    w
}

/// Regular part of the kernel limit as `β` tends to an integer:
/// `Σ_{k=1}^{K} (-γ)_k λ^k / k! Φ_{αk}(t)`, together with the magnitude of
/// the first omitted term as a tail estimate.
pub fn series_kernel_limit(p: &PrabhakarParams, terms: usize, t: f64) -> Result<(f64, f64)> {
    if terms < 1 {
        return Err(Error::Domain("series limit needs at least one term".into()));
    }
    let w = limit_weights(p, terms + 1);
    let mut sum = 0.0;
    for (k, c) in w.iter().take(terms).enumerate() {
        if *c != 0.0 {
            sum += c * gelfand_shilov(p.alpha * (k + 1) as f64, t)?;
        }
    }
    let next = w[terms];
    let tail = if next == 0.0 {
        0.0
    } else {
        (next * gelfand_shilov(p.alpha * (terms + 1) as f64, t)?).abs()
    };
    Ok((sum, tail))
}

/// `D^n f + Σ_{k=1}^{K} (-γ)_k λ^k / k! J^{αk} D^n f` for integer `β = n`.
/// Terms with vanishing weight are skipped, so `γ = 0` or `λ = 0` return
/// `D^n f` unchanged.
pub fn series_derivative_limit(p: &PrabhakarParams, f: &GridFunction, terms: usize) -> Result<GridFunction> {
    if !p.beta_is_integer() {
        return Err(Error::Domain(format!(
            "series limit needs an integer beta, got {}",
            p.beta
        )));
    }
    if terms < 1 {
        return Err(Error::Domain("series limit needs at least one term".into()));
    }
    let d = numerical_derivative(f, p.m())?;
    let mut out = d.clone();
    for (k, c) in limit_weights(p, terms).into_iter().enumerate() {
        if c != 0.0 {
            let j = rl_integral(p.alpha * (k + 1) as f64, &d)?;
            out = out.scaled_add(1.0, &j, c)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{prabhakar_derivative_caputo, DerivativeSource};
    use approx::assert_relative_eq;

    fn params(alpha: f64, beta: f64, gamma: f64, lambda: f64) -> PrabhakarParams {
        PrabhakarParams::new(alpha, beta, gamma, lambda).unwrap()
    }

    #[test]
    fn classify_examples() {
        let r = classify(&params(0.5, 0.5, -0.8, -1.0));
        assert!(r.gfc_compatible && r.ineq2_cm_sufficient && r.ineq1_strict && r.sonine_window);
        assert_relative_eq!(r.witnesses.minus_alpha_gamma, 0.4, max_relative = 1e-15);

        let r = classify(&params(0.5, 0.5, 0.8, -1.0));
        assert!(!r.ineq2_cm_sufficient && !r.gfc_compatible);

        let r = classify(&params(0.5, 0.5, 0.0, 0.0));
        assert!(r.sonine_window && r.degenerate && !r.ineq2_cm_sufficient);
        assert!(r.ineq1_strict && r.limit_flags.unwrap().all());

        let r = classify(&params(2.0, 0.5, -0.1, -1.0));
        assert!(!r.ineq2_cm_sufficient);

        // β < αγ: s k̃(s) does not vanish at the origin
        let r = classify(&params(0.5, 0.3, 0.8, -1.0));
        assert!(!r.ineq1_strict && !r.ineq1_weak && !r.limit_flags.unwrap().all());
    }

    #[test]
    fn boundary_case_is_flagged_not_decided() {
        // β - 1 - αγ = 0
        let r = classify(&params(0.5, 0.6, -0.8, -1.0));
        assert!(r.on_boundary && r.ineq1_weak && !r.ineq1_strict);
        assert!(r.gfc_compatible);
        assert!(!r.limit_flags.unwrap().flags[0]);
        assert!(r.witnesses.beta_minus_one_minus_alpha_gamma.abs() < 1e-15);
    }

    #[test]
    fn positive_lambda_has_no_flags() {
        let r = classify(&params(0.5, 0.5, -0.8, 1.0));
        assert!(r.limit_flags.is_none() && !r.ineq1_strict && !r.gfc_compatible);
        // the factor is identically one when γ = 0
        let r = classify(&params(0.5, 0.5, 0.0, 1.0));
        assert!(r.limit_flags.unwrap().all() && r.ineq1_strict);
    }

    #[test]
    fn sonine_examples() {
        assert!(sonine_check_time(&params(0.5, 0.5, 0.0, -1.0), 2.0, 512).unwrap() <= 1e-3);
        assert!(sonine_check_time(&params(0.7, 0.3, 1.4, 0.0), 2.0, 512).unwrap() <= 1e-3);
        assert!(sonine_check_time(&params(0.5, 0.6, -0.8, -1.0), 2.0, 512).unwrap() <= 1e-3);
        assert!(matches!(
            sonine_check_time(&params(0.5, 1.2, -0.8, -1.0), 2.0, 64),
            Err(Error::InvalidParameter { name: "beta", .. })
        ));
        let r = sonine_check_laplace(&params(0.5, 0.6, -0.8, -1.0), 1e-6, 1e6, 200).unwrap();
        assert!(r < 1e-12);
    }

    #[test]
    fn cm_examples() {
        let e = GridFunction::from_fn(5.0, 200, |t| (-t).exp()).unwrap();
        assert!(cm_check(&e, 8, 1e-12).unwrap().passed);

        let s = GridFunction::from_fn(std::f64::consts::PI, 200, f64::sin).unwrap();
        let r = cm_check(&s, 2, 1e-12).unwrap();
        assert!(!r.passed);
        assert!(r.violations.iter().any(|v| v.0 == 0 || v.0 == 2));
        assert!(r.violations.iter().all(|v| v.2 < -1e-12));

        assert!(cm_check(&e, 9, 1e-12).is_err());
        let coarse = GridFunction::from_fn(1.0, 10, |t| (-t).exp()).unwrap();
        assert!(matches!(cm_check(&coarse, 3, 0.0), Err(Error::GridTooCoarse { .. })));
    }

    #[test]
    fn kernel_limit_examples() {
        for p in [params(0.5, 1.0, 0.0, -1.0), params(0.5, 1.0, -1.0, 0.0)] {
            assert_eq!(series_kernel_limit(&p, 10, 0.7).unwrap(), (0.0, 0.0));
        }
        // Σ_k (-1)^k / Γ(k/2), reference from 40-digit summation
        let (v, tail) = series_kernel_limit(&params(0.5, 1.0, -1.0, -1.0), 60, 1.0).unwrap();
        assert_relative_eq!(v, SERIES_LIMIT_REF, max_relative = 1e-13);
        assert!(tail < 1e-30);
    }

    const SERIES_LIMIT_REF: f64 = -0.136_606_007_391_949_28;

    #[test]
    fn singular_first_term_only_below_alpha_one() {
        let small = params(0.4, 1.0, -0.5, -1.0);
        let (a, _) = series_kernel_limit(&small, 1, 1e-6).unwrap();
        let (b, _) = series_kernel_limit(&small, 1, 1e-8).unwrap();
        assert!(b.abs() > 10.0 * a.abs());
        let large = params(1.5, 1.0, -0.5, -1.0);
        let (a, _) = series_kernel_limit(&large, 20, 1e-8).unwrap();
        assert!(a.abs() < 1e-3);
    }

    #[test]
    fn derivative_limit_collapses_exactly() {
        let f = GridFunction::from_fn(1.0, 256, |t| t * t + t.sin()).unwrap();
        let d = numerical_derivative(&f, 1).unwrap();
        for p in [params(0.5, 1.0, 0.0, -1.0), params(0.5, 1.0, -0.7, 0.0)] {
            assert_eq!(series_derivative_limit(&p, &f, 40).unwrap(), d);
        }
        assert!(series_derivative_limit(&params(0.5, 0.9, -0.7, -1.0), &f, 40).is_err());
    }

    #[test]
    fn derivative_limit_is_continuous_in_beta() {
        let f = GridFunction::from_fn(1.0, 1024, |t| t * t).unwrap();
        let limit = series_derivative_limit(&params(0.5, 1.0, -0.8, -1.0), &f, 40).unwrap();
        let gap = |eps: f64| {
            let c = prabhakar_derivative_caputo(&params(0.5, 1.0 - eps, -0.8, -1.0), &f, DerivativeSource::Numerical)
                .unwrap();
            c.values
                .values()
                .iter()
                .zip(limit.values())
                .skip(1)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        };
        let (g2, g3) = (gap(1e-2), gap(1e-3));
        assert!(g3 <= 5e-2 && g3 < g2, "{g2} {g3}");
    }
}
