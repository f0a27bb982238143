//! Laplace-domain side of the Prabhakar kernels: closed-form transforms,
//! a fixed-Talbot numerical inverse, and the asymptotic limit flags of the
//! derivative-kernel transform.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::special::PrabhakarParams;

/// Differences this close to zero are treated as sitting on a region boundary.
pub const BOUNDARY_TOL: f64 = 1e-12;

pub(crate) fn strictly_positive(x: f64) -> bool {
    x > BOUNDARY_TOL
}

pub(crate) fn strictly_negative(x: f64) -> bool {
    x < -BOUNDARY_TOL
}

/// `s^{-b} (1 - λ s^{-α})^{-γ}` on the principal branch.
///
/// For `λ < 0` and `α ≤ 1` the base `1 - λ s^{-α}` never meets the negative
/// real axis while `s` stays off the cut `(-∞, 0]`, so the principal power
/// is the analytic continuation from the positive axis.
pub fn prabhakar_laplace(alpha: f64, index: f64, gamma: f64, lambda: f64, s: Complex64) -> Complex64 {
    let ln_s = s.ln();
    let base = Complex64::new(1.0, 0.0) - lambda * (-alpha * ln_s).exp();
    (-index * ln_s).exp() * base.powf(-gamma)
}

fn real_base(p: &PrabhakarParams, s: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::Domain(format!("Laplace variable must be positive, got {s}")));
    }
    let w = 1.0 - p.lambda * s.powf(-p.alpha);
    if w <= 0.0 {
        return Err(Error::Branch(w));
    }
    Ok(w)
}

/// Transform of the integral kernel, `s^{-β} (1 - λ s^{-α})^{-γ}`.
pub fn kernel_hat_integral(p: &PrabhakarParams, s: f64) -> Result<f64> {
    let w = real_base(p, s)?;
    Ok(s.powf(-p.beta) * w.powf(-p.gamma))
}

/// Transform of the Sonine partner `e^{-γ}_{α,1-β}(λ; ·)`,
/// `k̃(s) = s^{β-1} (1 - λ s^{-α})^{γ}`.
pub fn kernel_hat_derivative(p: &PrabhakarParams, s: f64) -> Result<f64> {
    let w = real_base(p, s)?;
    Ok(s.powf(p.beta - 1.0) * w.powf(p.gamma))
}

/// Complex-argument version of [`kernel_hat_derivative`].
pub fn kernel_hat_derivative_complex(p: &PrabhakarParams, s: Complex64) -> Complex64 {
    prabhakar_laplace(p.alpha, 1.0 - p.beta, -p.gamma, p.lambda, s)
}

type Evaluator = Box<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

/// A Laplace transform `F(s)` available off the real axis.
pub struct LaplaceSpec {
    pub label: String,
    evaluator: Evaluator,
    /// Real part to the right of which `F` is analytic.
    pub abscissa: f64,
}

impl LaplaceSpec {
    pub fn new(label: impl Into<String>, f: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static) -> Self {
        LaplaceSpec {
            label: label.into(),
            evaluator: Box::new(f),
            abscissa: 0.0,
        }
    }

    pub fn with_abscissa(mut self, abscissa: f64) -> Self {
        self.abscissa = abscissa;
        self
    }

    pub fn eval(&self, s: Complex64) -> Complex64 {
        (self.evaluator)(s)
    }

    /// Transform of `e^γ_{α,b}(λ; t)`.
    ///
    /// For `λ > 0` the transform has a branch point at `s = λ^{1/α}`, which
    /// becomes the abscissa.
    pub fn prabhakar(alpha: f64, index: f64, gamma: f64, lambda: f64) -> Self {
        let abscissa = if lambda > 0.0 { lambda.powf(1.0 / alpha) } else { 0.0 };
        LaplaceSpec::new(format!("e^{gamma}_{{{alpha},{index}}}({lambda}; t)"), move |s| {
            prabhakar_laplace(alpha, index, gamma, lambda, s)
        })
        .with_abscissa(abscissa)
    }
}

impl std::fmt::Debug for LaplaceSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LaplaceSpec")
            .field("label", &self.label)
            .field("abscissa", &self.abscissa)
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InversionConfig {
    /// Number of contour nodes `M`.
    pub node_count: usize,
    /// Contour radius times `t`; `None` uses the fixed-Talbot choice `2M/5`.
    pub contour_scale: Option<f64>,
}

impl Default for InversionConfig {
    fn default() -> Self {
        InversionConfig {
            node_count: 32,
            contour_scale: None,
        }
    }
}

/// Fixed-Talbot inversion (Abate and Valkó) of `F` at time `t`.
///
/// The contour `s(θ) = σ + rθ(cot θ + i)`, `θ ∈ (-π, π)`, is shifted by the
/// abscissa `σ` of `F` and has `r = scale / t`.
pub fn invert_laplace(f: &LaplaceSpec, t: f64, cfg: &InversionConfig) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("inversion time must be positive, got {t}")));
    }
    if cfg.node_count < 8 {
        return Err(Error::Domain(format!(
            "inversion needs at least 8 contour nodes, got {}",
            cfg.node_count
        )));
    }
    let scale = cfg.contour_scale.unwrap_or(0.4 * cfg.node_count as f64);
    let value = talbot(|s| f.eval(s), t, cfg.node_count, scale, f.abscissa.max(0.0));
    if !value.is_finite() {
        return Err(Error::Overflow("Laplace inversion contour sum"));
    }
    Ok(value)
}

/// The fixed-Talbot contour sum with `M = nodes` and `r = scale / t`.
pub(crate) fn talbot(f: impl Fn(Complex64) -> Complex64, t: f64, nodes: usize, scale: f64, shift: f64) -> f64 {
    let m = nodes as f64;
    let r = scale / t;
    let s0 = Complex64::new(shift + r, 0.0);
    let mut acc = 0.5 * ((s0 * t).exp() * f(s0)).re;
    for k in 1..nodes {
        let theta = k as f64 * PI / m;
        let cot = 1.0 / theta.tan();
        let s = Complex64::new(shift + r * theta * cot, r * theta);
        let sigma = theta + (theta * cot - 1.0) * cot;
        acc += ((s * t).exp() * f(s) * Complex64::new(1.0, sigma)).re;
    }
    r / m * acc
}

/// The four asymptotic conditions on `k̃(s) = s^{β-1}(1 - λ s^{-α})^γ`:
/// (i) `k̃ → ∞` and (ii) `s k̃ → 0` as `s → 0`; (iii) `k̃ → 0` and
/// (iv) `s k̃ → ∞` as `s → ∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitFlags {
    pub flags: [bool; 4],
    /// `k̃(s) ~ s^e` as `s → 0`.
    pub exponent_at_zero: f64,
    /// `k̃(s) ~ s^e` as `s → ∞`.
    pub exponent_at_infinity: f64,
}

impl LimitFlags {
    pub fn all(&self) -> bool {
        self.flags.iter().all(|&f| f)
    }
}

/// Decides conditions (i)-(iv) from the power-law exponents of `k̃`.
///
/// For `λ < 0`, `k̃(s) ~ (-λ)^γ s^{β-1-αγ}` near the origin; for `λ = 0` or
/// `γ = 0` the transform is the pure power `s^{β-1}`. Exponents within
/// [`BOUNDARY_TOL`] of zero count as failing the strict condition.
pub fn stieltjes_limit_flags(p: &PrabhakarParams) -> Result<LimitFlags> {
    let at_infinity = p.beta - 1.0;
    let at_zero = if p.lambda == 0.0 || p.gamma == 0.0 {
        at_infinity
    } else if p.lambda < 0.0 {
        p.beta - 1.0 - p.alpha * p.gamma
    } else {
        return Err(Error::Unsupported(format!(
            "limit flags for lambda = {} > 0 (branch point on the positive axis)",
            p.lambda
        )));
    };
    Ok(LimitFlags {
        flags: [
            strictly_negative(at_zero),
            strictly_positive(at_zero + 1.0),
            strictly_negative(at_infinity),
            strictly_positive(at_infinity + 1.0),
        ],
        exponent_at_zero: at_zero,
        exponent_at_infinity: at_infinity,
    })
}
