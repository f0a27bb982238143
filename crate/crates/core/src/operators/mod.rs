//! Grid realizations of the convolution operators.
//!
//! Every integral operator is a convolution `(k ⋆ f)(t_i)` evaluated by
//! product integration (see [`quadrature`]). Derivatives follow the two
//! textbook recipes: the Riemann-Liouville kind differentiates a
//! convolution numerically, the Caputo kind convolves a derivative.

mod grid;
mod kernel;
pub mod quadrature;
mod stencil;

pub use grid::{GridFunction, MaskedGrid};
pub use kernel::{GelfandShilov, Kernel, KernelCombination, KernelSpec, TabulatedKernel};
pub use quadrature::{
    convolve, convolve_pair, convolve_pair_both, default_local_cells, MomentWeights, SplitRule,
};
pub use stencil::numerical_derivative;

use crate::error::{Error, Result};
use crate::special::{PrabhakarKernel, PrabhakarParams};

/// `x^{b+r-1} E^γ_{α,b+r}(λ x^α)`: the `r`-fold antiderivative of the
/// kernel with index `b = beta_eff`.
pub fn kernel_antiderivative(p: &PrabhakarParams, beta_eff: f64, x: f64, order: u32) -> Result<f64> {
    PrabhakarKernel::new(p.alpha, beta_eff, p.gamma, p.lambda)?.antiderivative(x, order)
}

pub fn convolve_product_integration(k: &KernelSpec, f: &GridFunction) -> Result<GridFunction> {
    convolve(k, f)
}

/// `J^α f = Φ_α ⋆ f`.
pub fn rl_integral(alpha: f64, f: &GridFunction) -> Result<GridFunction> {
    check_positive("alpha", alpha, "α>0")?;
    convolve(&GelfandShilov { mu: alpha }, f)
}

/// `e^γ_{α,β}(λ; ·) ⋆ f`.
pub fn prabhakar_integral(p: &PrabhakarParams, f: &GridFunction) -> Result<GridFunction> {
    convolve(&PrabhakarKernel::integral(p), f)
}

/// Riemann-Liouville derivative `D^m J^{m-β} f`. Nodes 0 and n are masked.
pub fn rl_derivative(beta: f64, f: &GridFunction) -> Result<MaskedGrid> {
    let (m, mu) = classical_order(beta)?;
    differentiate_outer(&GelfandShilov { mu }, m, f)
}

/// Caputo derivative `J^{m-β} D^m f`.
pub fn caputo_derivative(beta: f64, f: &GridFunction, source: DerivativeSource) -> Result<MaskedGrid> {
    let (m, mu) = classical_order(beta)?;
    convolve_derivative(&GelfandShilov { mu }, m, f, source)
}

/// `D^m E^{-γ}_{α,m-β,λ} f`. Nodes 0 and n are masked.
pub fn prabhakar_derivative_rl(p: &PrabhakarParams, f: &GridFunction) -> Result<MaskedGrid> {
    let k = PrabhakarKernel::derivative(p)?;
    differentiate_outer(&k, p.m(), f)
}

/// Where the Caputo-type derivatives take `D^m f` from.
#[derive(Clone, Copy)]
pub enum DerivativeSource<'a> {
    /// Finite differences of the samples.
    Numerical,
    /// `D^m f` evaluated at the nodes, origin included.
    Pointwise(&'a dyn Fn(f64) -> f64),
    /// `D^m f` as a kernel with exact moments; use when it is singular at
    /// the origin.
    Kernel(&'a dyn Kernel),
}

impl std::fmt::Debug for DerivativeSource<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DerivativeSource::Numerical => "Numerical",
            DerivativeSource::Pointwise(_) => "Pointwise",
            DerivativeSource::Kernel(_) => "Kernel",
        })
    }
}

/// Regularized derivative `E^{-γ}_{α,m-β,λ} D^m f`.
pub fn prabhakar_derivative_caputo(
    p: &PrabhakarParams,
    f: &GridFunction,
    source: DerivativeSource,
) -> Result<MaskedGrid> {
    let k = PrabhakarKernel::derivative(p)?;
    convolve_derivative(&k, p.m(), f, source)
}

/// `d/dt (k ⋆ u) - k(t) u(0)`, taking `u(0)` from node 0.
///
/// With `u` piecewise linear the derivative of the product integral is
/// available in closed form: the `k(t) u(0)` term cancels and what remains
/// is `Σ_j M0_j (u_{i-j} - u_{i-j-1}) / h` over the cell masses `M0_j`.
/// Node 0 is masked.
#[allow(non_snake_case)]
pub fn kochubei_D(k: &KernelSpec, u: &GridFunction) -> Result<MaskedGrid> {
    let h = u.h();
    let w = MomentWeights::new(k, h, u.n())?;
    let v = u.values();
    let mut out = vec![0.0; v.len()];
    for (i, slot) in out.iter_mut().enumerate().skip(1) {
        let mut acc = 0.0;
        for j in 0..i {
            acc += w.mass[j] * (v[i - j] - v[i - j - 1]);
        }
        *slot = acc / h;
    }
    Ok(MaskedGrid::masked(u.with_values(out)?, &[0]))
}

/// `κ ⋆ u`.
#[allow(non_snake_case)]
pub fn kochubei_J(kappa: &KernelSpec, u: &GridFunction) -> Result<GridFunction> {
    convolve(kappa, u)
}

fn check_positive(name: &'static str, value: f64, condition: &'static str) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter { name, value, condition })
    }
}

/// `(m, m - β)` for a classical non-integer order `β`.
fn classical_order(beta: f64) -> Result<(u32, f64)> {
    check_positive("beta", beta, "Re(β)>0")?;
    if beta == beta.round() {
        return Err(Error::IntegerOrder(beta));
    }
    let m = beta.ceil();
    Ok((m as u32, m - beta))
}

fn differentiate_outer(k: &dyn Kernel, m: u32, f: &GridFunction) -> Result<MaskedGrid> {
    let inner = convolve(k, f)?;
    let d = numerical_derivative(&inner, m)?;
    let n = d.n();
    Ok(MaskedGrid::masked(d, &[0, n]))
}

fn convolve_derivative(k: &dyn Kernel, m: u32, f: &GridFunction, source: DerivativeSource) -> Result<MaskedGrid> {
    match source {
        DerivativeSource::Numerical => {
            let d = numerical_derivative(f, m)?;
            Ok(MaskedGrid::masked(convolve(k, &d)?, &[0]))
        }
        DerivativeSource::Pointwise(g) => {
            let d = GridFunction::from_fn(f.t_max(), f.n(), g)?;
            Ok(MaskedGrid::masked(convolve(k, &d)?, &[0]))
        }
        DerivativeSource::Kernel(g) => {
            let n = f.n();
            let values = convolve_pair(k, g, f.t_max(), n, default_local_cells(n), SplitRule::Lower)?;
            Ok(MaskedGrid::masked(f.with_values(values)?, &[0]))
        }
    }
}
