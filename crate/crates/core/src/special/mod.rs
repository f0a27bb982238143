//! Scalar special functions: gamma family, the Prabhakar function and the
//! kernels built from it.

mod dd;
#[allow(clippy::excessive_precision)]
mod gamma;
mod params;
mod prabhakar;

pub use gamma::{gamma_fn, ln_gamma, pochhammer, reciprocal_gamma};
pub use params::PrabhakarParams;
pub use prabhakar::{prabhakar_e, prabhakar_e_with, Evaluation, SeriesConfig, SeriesDiagnostics};

use crate::error::{Error, Result};

/// Gel'fand-Shilov function `Φ_μ(t) = t^{μ-1} / Γ(μ)`.
pub fn gelfand_shilov(mu: f64, t: f64) -> Result<f64> {
    if !(mu > 0.0) {
        return Err(Error::InvalidParameter {
            name: "mu",
            value: mu,
            condition: "μ>0",
        });
    }
    if !(t > 0.0) {
        return Err(Error::Domain(format!("Gel'fand-Shilov function needs t > 0, got {t}")));
    }
    Ok(t.powf(mu - 1.0) * reciprocal_gamma(mu))
}

/// `e^γ_{α,b}(λ; t) = t^{b-1} E^γ_{α,b}(λ t^α)` with `b = beta_eff`.
pub fn prabhakar_kernel(p: &PrabhakarParams, beta_eff: f64, t: f64) -> Result<f64> {
    PrabhakarKernel::new(p.alpha, beta_eff, p.gamma, p.lambda)?.value(t)
}

/// A Prabhakar kernel `t^{b-1} E^γ_{α,b}(λ t^α)` with its own index `b`.
///
/// The index is decoupled from [`PrabhakarParams::beta`] because the
/// derivative kernels use `m - β`, and the antiderivatives shift it by one
/// or two.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrabhakarKernel {
    pub alpha: f64,
    pub index: f64,
    pub gamma: f64,
    pub lambda: f64,
    pub series: SeriesConfig,
}

impl PrabhakarKernel {
    pub fn new(alpha: f64, index: f64, gamma: f64, lambda: f64) -> Result<Self> {
        if !(alpha > 0.0) {
            return Err(Error::InvalidParameter {
                name: "alpha",
                value: alpha,
                condition: "Re(α)>0",
            });
        }
        if !(index > 0.0) {
            return Err(Error::InvalidParameter {
                name: "beta",
                value: index,
                condition: "Re(β)>0",
            });
        }
        Ok(PrabhakarKernel {
            alpha,
            index,
            gamma,
            lambda,
            series: SeriesConfig::default(),
        })
    }

    /// Kernel `e^γ_{α,β}(λ; ·)` of the Prabhakar integral.
    pub fn integral(p: &PrabhakarParams) -> Self {
        PrabhakarKernel {
            alpha: p.alpha,
            index: p.beta,
            gamma: p.gamma,
            lambda: p.lambda,
            series: SeriesConfig::default(),
        }
    }

    /// Kernel `e^{-γ}_{α,m-β}(λ; ·)` of the regularized derivative.
    ///
    /// Fails for integer `β`, where the index `m - β` vanishes.
    pub fn derivative(p: &PrabhakarParams) -> Result<Self> {
        if p.beta_is_integer() {
            return Err(Error::IntegerOrder(p.beta));
        }
        Ok(PrabhakarKernel {
            alpha: p.alpha,
            index: p.m() as f64 - p.beta,
            gamma: -p.gamma,
            lambda: p.lambda,
            series: SeriesConfig::default(),
        })
    }

    pub fn with_series(mut self, series: SeriesConfig) -> Self {
        self.series = series;
        self
    }

    fn e(&self, index: f64, x: f64) -> Result<f64> {
        let z = self.lambda * x.powf(self.alpha);
        prabhakar_e_with(&self.series, self.alpha, index, self.gamma, z).map(|(v, _)| v)
    }

    pub fn value(&self, t: f64) -> Result<f64> {
        if !(t > 0.0) {
            return Err(Error::Domain(format!("Prabhakar kernel needs t > 0, got {t}")));
        }
        Ok(t.powf(self.index - 1.0) * self.e(self.index, t)?)
    }

    /// Repeated antiderivative from the origin,
    /// `x^{b+r-1} E^γ_{α,b+r}(λ x^α)` for order `r` of 1 or 2.
    pub fn antiderivative(&self, x: f64, order: u32) -> Result<f64> {
        check_order(order)?;
        if x == 0.0 {
            return Ok(0.0);
        }
        if !(x > 0.0) {
            return Err(Error::Domain(format!("antiderivative needs x >= 0, got {x}")));
        }
        let shifted = self.index + order as f64;
        Ok(x.powf(self.index + (order - 1) as f64) * self.e(shifted, x)?)
    }
}

/// Repeated antiderivative of `Φ_μ`, `x^{μ+r-1} / Γ(μ+r)`.
///
/// Written with the same floating-point expression as
/// [`PrabhakarKernel::antiderivative`] so that `γ = 0` kernels reproduce it
/// bit for bit.
pub(crate) fn gelfand_shilov_antiderivative(mu: f64, x: f64, order: u32) -> Result<f64> {
    check_order(order)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    if !(x > 0.0) {
        return Err(Error::Domain(format!("antiderivative needs x >= 0, got {x}")));
    }
    Ok(x.powf(mu + (order - 1) as f64) * reciprocal_gamma(mu + order as f64))
}

fn check_order(order: u32) -> Result<()> {
    if order == 1 || order == 2 {
        Ok(())
    } else {
        Err(Error::Domain(format!("antiderivative order must be 1 or 2, got {order}")))
    }
}
