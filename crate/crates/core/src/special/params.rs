use crate::error::{Error, Result};

/// The real parameter quadruple `(α, β, γ, λ)` of the Prabhakar kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrabhakarParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub lambda: f64,
}

impl PrabhakarParams {
    pub fn new(alpha: f64, beta: f64, gamma: f64, lambda: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::InvalidParameter {
                name: "alpha",
                value: alpha,
                condition: "Re(α)>0",
            });
        }
        if !(beta > 0.0) || !beta.is_finite() {
            return Err(Error::InvalidParameter {
                name: "beta",
                value: beta,
                condition: "Re(β)>0",
            });
        }
        if !gamma.is_finite() {
            return Err(Error::InvalidParameter {
                name: "gamma",
                value: gamma,
                condition: "γ finite",
            });
        }
        if !lambda.is_finite() {
            return Err(Error::InvalidParameter {
                name: "lambda",
                value: lambda,
                condition: "λ finite",
            });
        }
        Ok(PrabhakarParams {
            alpha,
            beta,
            gamma,
            lambda,
        })
    }

    /// `m = ⌈β⌉`, so that `m - 1 < β ≤ m`.
    pub fn m(&self) -> u32 {
        self.beta.ceil() as u32
    }

    pub fn beta_is_integer(&self) -> bool {
        self.beta == self.beta.floor()
    }

    /// `0 < β < 1`: the window where the kernels form a Sonine pair.
    pub fn in_sonine_window(&self) -> bool {
        self.beta > 0.0 && self.beta < 1.0
    }
}
