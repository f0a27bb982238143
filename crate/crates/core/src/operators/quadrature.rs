//! Product integration against exact kernel moments.
//!
//! On a lag cell `[a, b] = [jh, (j+1)h]` a linear function `g` with
//! end values `g_a`, `g_b` integrates against the kernel as
//!
//! ```text
//! ∫ₐᵇ k(u) g(u) du = (M0 - L) g_a + L g_b
//! M0 = K1(b) - K1(a)
//! L  = K1(b) - (K2(b) - K2(a)) / h        (= ∫ₐᵇ (u - a) k(u) du / h)
//! ```
//!
//! where `K1`, `K2` are the first and second antiderivatives of `k`.
//! The weights depend on the lag only, so one set serves every output
//! node of a convolution.

use super::grid::GridFunction;
use super::kernel::Kernel;
use crate::error::{Error, Result};

/// Per-lag-cell weights `(M0 - L, L)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentWeights {
    pub near: Vec<f64>,
    pub far: Vec<f64>,
    /// Zeroth moments `M0` per cell.
    pub mass: Vec<f64>,
}

impl MomentWeights {
    pub fn new(k: &dyn Kernel, h: f64, cells: usize) -> Result<Self> {
        let mut k1 = Vec::with_capacity(cells + 1);
        let mut k2 = Vec::with_capacity(cells + 1);
        for j in 0..=cells {
            let x = j as f64 * h;
            k1.push(k.antiderivative(x, 1)?);
            k2.push(k.antiderivative(x, 2)?);
        }
        let mut near = Vec::with_capacity(cells);
        let mut far = Vec::with_capacity(cells);
        let mut mass = Vec::with_capacity(cells);
        for j in 0..cells {
            let m0 = k1[j + 1] - k1[j];
            let l = k1[j + 1] - (k2[j + 1] - k2[j]) / h;
            near.push(m0 - l);
            far.push(l);
            mass.push(m0);
        }
        Ok(MomentWeights { near, far, mass })
    }
}

/// `(k ⋆ f)(t_i)` with `f` piecewise linear between nodes.
pub fn convolve(k: &dyn Kernel, f: &GridFunction) -> Result<GridFunction> {
    let w = MomentWeights::new(k, f.h(), f.n())?;
    convolve_with_weights(&w, f)
}

pub(crate) fn convolve_with_weights(w: &MomentWeights, f: &GridFunction) -> Result<GridFunction> {
    let v = f.values();
    let mut out = vec![0.0; v.len()];
    for (i, slot) in out.iter_mut().enumerate().skip(1) {
        let mut acc = 0.0;
        for j in 0..i {
            acc += w.near[j] * v[i - j] + w.far[j] * v[i - j - 1];
        }
        *slot = acc;
    }
    f.with_values(out)
}

/// Where the two-kernel convolution splits `[0, t_i]` on the global grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitRule {
    /// First piece has `⌊i/2⌋` cells.
    Lower,
    /// First piece has `⌈i/2⌉` cells.
    Upper,
}

/// `(a ⋆ b)(t_i)` at the nodes of `[0, t_max]` for two kernels that may
/// both be singular at the origin.
///
/// The interval is split near `t_i/2`. On the first piece `b` carries the
/// exact moments and `a(t_i - τ)` is interpolated; on the second piece the
/// roles swap. Neither interpolated factor is ever sampled at its
/// singularity. Nodes with fewer than `local_cells` grid cells are
/// recomputed on a private uniform grid of `local_cells` cells, so the
/// early nodes are resolved as finely as the late ones. The value at the
/// origin is returned as zero.
pub fn convolve_pair(
    a: &dyn Kernel,
    b: &dyn Kernel,
    t_max: f64,
    n: usize,
    local_cells: usize,
    split: SplitRule,
) -> Result<Vec<f64>> {
    let mut out = pair_with_splits(a, b, t_max, n, local_cells, &[split])?;
    Ok(out.remove(0))
}

/// [`convolve_pair`] under both split rules, sharing the refined early nodes.
pub fn convolve_pair_both(
    a: &dyn Kernel,
    b: &dyn Kernel,
    t_max: f64,
    n: usize,
    local_cells: usize,
) -> Result<[Vec<f64>; 2]> {
    let mut out = pair_with_splits(a, b, t_max, n, local_cells, &[SplitRule::Lower, SplitRule::Upper])?;
    let upper = out.pop().unwrap_or_default();
    let lower = out.pop().unwrap_or_default();
    Ok([lower, upper])
}

fn pair_with_splits(
    a: &dyn Kernel,
    b: &dyn Kernel,
    t_max: f64,
    n: usize,
    local_cells: usize,
    splits: &[SplitRule],
) -> Result<Vec<Vec<f64>>> {
    if n < 2 {
        return Err(Error::InvalidGrid(format!("need at least 2 intervals, got {n}")));
    }
    let local_cells = local_cells.max(2) & !1;
    let h = t_max / n as f64;
    let mut out = vec![vec![0.0; n + 1]; splits.len()];

    if n >= local_cells {
        let wa = MomentWeights::new(a, h, n - n / 2)?;
        let wb = MomentWeights::new(b, h, n - n / 2)?;
        let mut av = vec![f64::NAN; n + 1];
        let mut bv = vec![f64::NAN; n + 1];
        for j in 1..=n {
            let t = j as f64 * h;
            av[j] = a.value(t)?;
            bv[j] = b.value(t)?;
        }
        for (values, split) in out.iter_mut().zip(splits) {
            for (i, slot) in values.iter_mut().enumerate().skip(local_cells) {
                let first = match split {
                    SplitRule::Lower => i / 2,
                    SplitRule::Upper => i - i / 2,
                };
                *slot = split_sum(&wa, &wb, &av, &bv, i, first);
            }
        }
    }

    for i in 1..local_cells.min(n + 1) {
        let v = pair_on_local_grid(a, b, i as f64 * h, local_cells)?;
        for values in out.iter_mut() {
            values[i] = v;
        }
    }
    Ok(out)
}

fn split_sum(wa: &MomentWeights, wb: &MomentWeights, av: &[f64], bv: &[f64], i: usize, first: usize) -> f64 {
    let mut acc = 0.0;
    // τ ∈ [0, first·h]: b exact, a(t_i - τ) linear
    for l in 0..first {
        acc += wb.near[l] * av[i - l] + wb.far[l] * av[i - l - 1];
    }
    // u = t_i - τ ∈ [0, (i - first)·h]: a exact, b(t_i - u) linear
    for l in 0..(i - first) {
        acc += wa.near[l] * bv[i - l] + wa.far[l] * bv[i - l - 1];
    }
    acc
}

fn pair_on_local_grid(a: &dyn Kernel, b: &dyn Kernel, t: f64, cells: usize) -> Result<f64> {
    let h = t / cells as f64;
    let half = cells / 2;
    let wa = MomentWeights::new(a, h, half)?;
    let wb = MomentWeights::new(b, h, half)?;
    let mut av = vec![f64::NAN; cells + 1];
    let mut bv = vec![f64::NAN; cells + 1];
    for j in half..=cells {
        let x = j as f64 * h;
        av[j] = a.value(x)?;
        bv[j] = b.value(x)?;
    }
    Ok(split_sum(&wa, &wb, &av, &bv, cells, half))
}

/// Default private-grid size for [`convolve_pair`]: a sixteenth of the
/// grid, at least 16 cells.
pub fn default_local_cells(n: usize) -> usize {
    (n / 16).max(16)
}
