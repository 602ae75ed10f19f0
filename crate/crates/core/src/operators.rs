//! Causal fractional operators built from binomial-series kernels.
//!
//! `(1 - tau^{-1})^alpha` is convolution with `c_k = (-1)^k C(alpha, k)`.
//! The fractional sum and the Riemann-Liouville, Caputo and
//! Grünwald-Letnikov differences are all expressed through it.
//!
//! Operators on `N` take a [`WeightedSequence`] with `start = 0`. Values past
//! the end of the input window are unknown, so outputs are restricted to the
//! indices that only depend on the stored data: the fractional sum and the
//! GL operator keep the input length, the two forward differences lose the
//! last index.

use num_complex::Complex64;

use crate::binomial::{make_kernel, FracOrder};
use crate::error::{FracError, Result};
use crate::sequence::{convolve, convolve_window, WeightedSequence};

/// `(1 - tau^{-1})^alpha u` with the kernel truncated after `truncation` terms.
///
/// See [`convolve`] for the output window and the region where the result is
/// exact.
pub fn frac_power(alpha: f64, u: &WeightedSequence, truncation: usize) -> Result<WeightedSequence> {
    let kernel = make_kernel(alpha, truncation)?;
    Ok(convolve(&kernel, u))
}

/// `(1 - tau^{-1})^alpha u` on the input's own window. A kernel as long as
/// the window makes this exact for sequences supported in the window.
pub fn frac_power_window(alpha: f64, u: &WeightedSequence) -> Result<WeightedSequence> {
    let kernel = make_kernel(alpha, u.len().saturating_sub(1))?;
    Ok(convolve_window(&kernel, u, u.start(), u.len()))
}

pub(crate) fn require_natural(v: &WeightedSequence) -> Result<()> {
    if v.start() != 0 {
        return Err(FracError::Invalid(format!(
            "expected a sequence on N (start 0), got start {}",
            v.start()
        )));
    }
    Ok(())
}

/// Fractional sum `(nabla^{-alpha} v)_n = sum_{k=0}^n (-1)^k C(-alpha, k) v_{n-k}`.
pub fn frac_sum(alpha: f64, v: &WeightedSequence) -> Result<WeightedSequence> {
    FracOrder::new(alpha)?;
    if alpha <= 0.0 {
        return Err(FracError::domain(format!(
            "fractional sum needs alpha > 0, got {alpha}"
        )));
    }
    require_natural(v)?;
    frac_power_window(-alpha, v)
}

/// `chi_N (tau - 1) u`: `u_{n+1} - u_n` for `n >= 0`, zero for `n < 0`.
///
/// `u` is treated as finitely supported, so the last stored index yields
/// `-u_{end-1}`.
pub fn forward_difference(u: &WeightedSequence) -> WeightedSequence {
    let start = (u.start() - 1).max(0);
    let end = u.end().max(start);
    let mut out = u.window(start, (end - start) as usize);
    for n in start..end {
        let slot = out.get_mut(n).unwrap();
        for (i, s) in slot.iter_mut().enumerate() {
            *s = u.component(n + 1, i) - u.component(n, i);
        }
    }
    out
}

/// `(Delta^alpha v)_n = ((1 - tau^{-1})^alpha v)_{n+1}`, i.e. the
/// Riemann-Liouville difference `Delta nabla^{-(1-alpha)} v` for `n` up to
/// `len - 2`.
pub fn rl_delta(alpha: f64, v: &WeightedSequence) -> Result<WeightedSequence> {
    FracOrder::in_unit_interval(alpha)?;
    require_natural(v)?;
    let len = v.len().saturating_sub(1);
    let kernel = make_kernel(alpha, v.len().saturating_sub(1))?;
    Ok(convolve_window(&kernel, v, 1, len).shift(1))
}

/// Caputo difference `nabla^{-(1-alpha)} Delta v`, evaluated as
/// `tau (1 - tau^{-1})^alpha (v - chi_N v_0)` on `0..len-1`.
pub fn caputo_delta(alpha: f64, v: &WeightedSequence) -> Result<WeightedSequence> {
    FracOrder::in_unit_interval(alpha)?;
    require_natural(v)?;
    if v.is_empty() {
        return Ok(v.clone());
    }
    let v0 = v.get(0).unwrap().to_vec();
    let regularized = v.map_vectors(|x| x.iter().zip(&v0).map(|(a, b)| a - b).collect())?;
    rl_delta(alpha, &regularized)
}

/// Grünwald-Letnikov difference on the grid `hN`:
/// `h^{-alpha} sum_{k=0}^{n} (-1)^k C(alpha, k) v_{n-k}`, where `v_n = v(nh)`.
pub fn gl_delta(alpha: f64, h: f64, v: &WeightedSequence) -> Result<WeightedSequence> {
    FracOrder::in_unit_interval(alpha)?;
    if !(h.is_finite() && h > 0.0) {
        return Err(FracError::domain(format!("step must be positive, got {h}")));
    }
    require_natural(v)?;
    let scale = h.powf(-alpha);
    Ok(frac_power_window(alpha, v)?.scale(Complex64::new(scale, 0.0)))
}
