//! Convolution kernels with exact antiderivatives.

use super::grid::GridFunction;
use crate::error::{Error, Result};
use crate::special::{
    gelfand_shilov, gelfand_shilov_antiderivative, PrabhakarKernel, PrabhakarParams,
};

/// A locally integrable kernel together with its first two repeated
/// antiderivatives from the origin, which is all product integration needs.
pub trait Kernel {
    fn value(&self, t: f64) -> Result<f64>;

    /// `∫₀ˣ k` for `order = 1`, `∫₀ˣ ∫₀ʸ k` for `order = 2`.
    fn antiderivative(&self, x: f64, order: u32) -> Result<f64>;
}

impl Kernel for PrabhakarKernel {
    fn value(&self, t: f64) -> Result<f64> {
        PrabhakarKernel::value(self, t)
    }

    fn antiderivative(&self, x: f64, order: u32) -> Result<f64> {
        PrabhakarKernel::antiderivative(self, x, order)
    }
}

/// `Φ_μ(t) = t^{μ-1}/Γ(μ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GelfandShilov {
    pub mu: f64,
}

impl Kernel for GelfandShilov {
    fn value(&self, t: f64) -> Result<f64> {
        gelfand_shilov(self.mu, t)
    }

    fn antiderivative(&self, x: f64, order: u32) -> Result<f64> {
        gelfand_shilov_antiderivative(self.mu, x, order)
    }
}

/// A kernel known only through samples, modelled as the piecewise-linear
/// interpolant of those samples. A non-finite sample at the origin is
/// replaced by its neighbour.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedKernel {
    h: f64,
    samples: Vec<f64>,
    first: Vec<f64>,
    second: Vec<f64>,
}

impl TabulatedKernel {
    pub fn new(grid: &GridFunction) -> Self {
        Self::from_samples(grid.h(), grid.values().to_vec())
    }

    /// Samples at `j·h`; only the origin may be non-finite.
    pub fn from_samples(h: f64, mut samples: Vec<f64>) -> Self {
        if !samples[0].is_finite() {
            samples[0] = samples[1];
        }
        let mut first = vec![0.0; samples.len()];
        let mut second = vec![0.0; samples.len()];
        for j in 1..samples.len() {
            let (a, b) = (samples[j - 1], samples[j]);
            first[j] = first[j - 1] + 0.5 * h * (a + b);
            // ∫ over the cell of the running integral of the linear piece
            second[j] = second[j - 1] + h * first[j - 1] + h * h * (a / 3.0 + b / 6.0);
        }
        TabulatedKernel {
            h,
            samples,
            first,
            second,
        }
    }

    fn locate(&self, x: f64) -> Result<(usize, f64)> {
        let last = self.samples.len() - 1;
        let pos = x / self.h;
        if !(x >= 0.0) || pos > last as f64 * (1.0 + 1e-12) {
            return Err(Error::Domain(format!(
                "tabulated kernel queried at {x}, outside [0, {}]",
                last as f64 * self.h
            )));
        }
        let j = (pos.floor() as usize).min(last - 1);
        Ok((j, x - j as f64 * self.h))
    }
}

impl Kernel for TabulatedKernel {
    fn value(&self, t: f64) -> Result<f64> {
        let (j, d) = self.locate(t)?;
        let w = d / self.h;
        Ok(self.samples[j] * (1.0 - w) + self.samples[j + 1] * w)
    }

    fn antiderivative(&self, x: f64, order: u32) -> Result<f64> {
        let (j, d) = self.locate(x)?;
        let a = self.samples[j];
        let slope = (self.samples[j + 1] - a) / self.h;
        // partial-cell integrals of a + slope·u
        let part1 = a * d + 0.5 * slope * d * d;
        match order {
            1 => Ok(self.first[j] + part1),
            2 => {
                let part2 = self.first[j] * d + 0.5 * a * d * d + slope * d * d * d / 6.0;
                Ok(self.second[j] + part2)
            }
            _ => Err(Error::Domain(format!("antiderivative order must be 1 or 2, got {order}"))),
        }
    }
}

/// The kernel descriptions the operators accept.
#[derive(Debug, Clone, PartialEq)]
pub enum KernelSpec {
    GelfandShilov(f64),
    /// `e^γ_{α,β}(λ; ·)`.
    PrabhakarIntegralKernel(PrabhakarKernel),
    /// `e^{-γ}_{α,m-β}(λ; ·)`.
    PrabhakarDerivativeKernel(PrabhakarKernel),
    Tabulated(TabulatedKernel),
}

impl KernelSpec {
    pub fn integral_of(p: &PrabhakarParams) -> Self {
        KernelSpec::PrabhakarIntegralKernel(PrabhakarKernel::integral(p))
    }

    pub fn derivative_of(p: &PrabhakarParams) -> Result<Self> {
        Ok(KernelSpec::PrabhakarDerivativeKernel(PrabhakarKernel::derivative(p)?))
    }

    pub fn tabulated(grid: &GridFunction) -> Self {
        KernelSpec::Tabulated(TabulatedKernel::new(grid))
    }
}

impl Kernel for KernelSpec {
    fn value(&self, t: f64) -> Result<f64> {
        match self {
            KernelSpec::GelfandShilov(mu) => GelfandShilov { mu: *mu }.value(t),
            KernelSpec::PrabhakarIntegralKernel(k) | KernelSpec::PrabhakarDerivativeKernel(k) => k.value(t),
            KernelSpec::Tabulated(k) => k.value(t),
        }
    }

    fn antiderivative(&self, x: f64, order: u32) -> Result<f64> {
        match self {
            KernelSpec::GelfandShilov(mu) => GelfandShilov { mu: *mu }.antiderivative(x, order),
            KernelSpec::PrabhakarIntegralKernel(k) | KernelSpec::PrabhakarDerivativeKernel(k) => {
                k.antiderivative(x, order)
            }
            KernelSpec::Tabulated(k) => k.antiderivative(x, order),
        }
    }
}

/// A finite linear combination `Σ c_j k_j` of Prabhakar kernels.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct KernelCombination {
    pub terms: Vec<(f64, PrabhakarKernel)>,
}

impl Kernel for KernelCombination {
    fn value(&self, t: f64) -> Result<f64> {
        self.terms
            .iter()
            .map(|(c, k)| Ok(c * k.value(t)?))
            .sum()
    }

    fn antiderivative(&self, x: f64, order: u32) -> Result<f64> {
        self.terms
            .iter()
            .map(|(c, k)| Ok(c * k.antiderivative(x, order)?))
            .sum()
    }
}
