//! Generalized binomial coefficients and the coefficient sequences of
//! `(1 - z^{-1})^alpha`.
//!
//! All coefficients are produced by multiplicative recurrence. Gamma functions
//! only appear in [`falling_factorial_gamma`], which exists to cross-check the
//! recurrence against the closed form.
//!
//! For `alpha` in `(0, 1)` the kernel tail decays like `k^{-1-alpha}`; callers
//! choose the truncation length themselves.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{FracError, Result};

/// A real fractional exponent.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct FracOrder(f64);

impl FracOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(FracError::domain(format!(
                "order must be finite, got {alpha}"
            )));
        }
        Ok(FracOrder(alpha))
    }

    /// Accepts only `alpha` strictly inside `(0, 1)`, the range required by the
    /// Riemann-Liouville and Caputo machinery.
    pub fn in_unit_interval(alpha: f64) -> Result<Self> {
        let order = Self::new(alpha)?;
        order.require_unit_interval()?;
        Ok(order)
    }

    pub fn require_unit_interval(self) -> Result<()> {
        if self.0 > 0.0 && self.0 < 1.0 {
            Ok(())
        } else {
            Err(FracError::domain(format!(
                "order must lie in (0, 1), got {}",
                self.0
            )))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for FracOrder {
    type Error = FracError;

    fn try_from(alpha: f64) -> Result<Self> {
        FracOrder::new(alpha)
    }
}

impl From<FracOrder> for f64 {
    fn from(order: FracOrder) -> f64 {
        order.0
    }
}

/// `C(alpha, n) = alpha (alpha - 1) ... (alpha - n + 1) / n!`.
pub fn binom(alpha: f64, n: usize) -> Result<f64> {
    FracOrder::new(alpha)?;
    let mut acc = 1.0;
    for i in 0..n {
        let i = i as f64;
        acc = acc * (alpha - i) / (i + 1.0);
    }
    Ok(acc)
}

/// `x (x - 1) ... (x - n + 1)` for an integer count `n`.
///
/// This equals `Gamma(x + 1) / Gamma(x - n + 1)` whenever the right side is
/// defined, and the product form stays finite where both gammas have poles.
pub fn falling_factorial(x: f64, n: usize) -> Result<f64> {
    if !x.is_finite() {
        return Err(FracError::domain(format!(
            "argument must be finite, got {x}"
        )));
    }
    Ok((0..n).fold(1.0, |acc, i| acc * (x - i as f64)))
}

/// `Gamma(x + 1) / Gamma(x - m + 1)` for real `m`.
///
/// Integer `m >= 0` goes through the product in [`falling_factorial`]. Poles
/// on both sides cancel to their limit ratio; a numerator pole without a
/// matching denominator pole is a domain error.
pub fn falling_factorial_gamma(x: f64, m: f64) -> Result<f64> {
    if !x.is_finite() || !m.is_finite() {
        return Err(FracError::domain("arguments must be finite"));
    }
    if m >= 0.0 && m.fract() == 0.0 && m <= usize::MAX as f64 {
        return falling_factorial(x, m as usize);
    }
    let top = x + 1.0;
    let bottom = x - m + 1.0;
    match (is_gamma_pole(top), is_gamma_pole(bottom)) {
        (true, true) => {
            // Gamma(-p + e) / Gamma(-q + e) -> (-1)^(p - q) q! / p!
            let p = -top;
            let q = -bottom;
            let sign = if ((p - q) as i64).rem_euclid(2) == 0 {
                1.0
            } else {
                -1.0
            };
            let (lq, _) = ln_gamma_signed(q + 1.0);
            let (lp, _) = ln_gamma_signed(p + 1.0);
            Ok(sign * (lq - lp).exp())
        }
        (true, false) => Err(FracError::domain(format!(
            "Gamma pole at {top} in the numerator is not cancelled"
        ))),
        (false, true) => Ok(0.0),
        (false, false) => {
            let (ln_top, s_top) = ln_gamma_signed(top);
            let (ln_bottom, s_bottom) = ln_gamma_signed(bottom);
            Ok(s_top * s_bottom * (ln_top - ln_bottom).exp())
        }
    }
}

fn is_gamma_pole(x: f64) -> bool {
    x <= 0.0 && x.fract() == 0.0
}

/// `(ln |Gamma(x)|, sign Gamma(x))` away from the poles.
pub(crate) fn ln_gamma_signed(x: f64) -> (f64, f64) {
    if x > 0.0 {
        return (ln_gamma(x), 1.0);
    }
    // reflection: Gamma(x) Gamma(1 - x) = pi / sin(pi x)
    let s = (PI * x).sin();
    let ln = PI.ln() - s.abs().ln() - ln_gamma(1.0 - x);
    (ln, s.signum())
}

/// One-sided coefficient sequence `c_k = (-1)^k C(alpha, k)`, `k = 0..=n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvolutionKernel {
    alpha: FracOrder,
    coeffs: Vec<f64>,
}

impl ConvolutionKernel {
    pub fn alpha(&self) -> FracOrder {
        self.alpha
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Truncation index `N`; the kernel holds `N + 1` coefficients.
    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Builds a kernel from explicit coefficients. The exponent tag is kept
    /// for bookkeeping only.
    pub fn from_coeffs(alpha: FracOrder, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(FracError::Invalid(
                "kernel needs at least one coefficient".into(),
            ));
        }
        Ok(ConvolutionKernel { alpha, coeffs })
    }
}

/// Coefficients of `(1 - z^{-1})^alpha` up to `z^{-n}`, via
/// `c_{k+1} = c_k (k - alpha) / (k + 1)`.
pub fn make_kernel(alpha: f64, n: usize) -> Result<ConvolutionKernel> {
    let order = FracOrder::new(alpha)?;
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut c = 1.0;
    coeffs.push(c);
    for k in 0..n {
        let k = k as f64;
        c = c * (k - alpha) / (k + 1.0);
        coeffs.push(c);
    }
    Ok(ConvolutionKernel {
        alpha: order,
        coeffs,
    })
}

/// `sum_{k=0}^{n} (-1)^k C(alpha, k)`, which equals `(-1)^n C(alpha - 1, n)`.
///
/// The terms nearly cancel for large `n`, so the sum is compensated.
pub fn partial_sum(alpha: f64, n: usize) -> Result<f64> {
    let kernel = make_kernel(alpha, n)?;
    Ok(neumaier_sum(kernel.coeffs.iter().copied()))
}

pub(crate) fn neumaier_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        if a == b {
            0.0
        } else {
            (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
        }
    }

    #[test]
    fn binom_examples() {
        assert_eq!(binom(0.5, 0).unwrap(), 1.0);
        assert_eq!(binom(0.5, 2).unwrap(), -0.125);
        assert_eq!(binom(3.0, 5).unwrap(), 0.0);
        assert_eq!(binom(5.0, 2).unwrap(), 10.0);
    }

    #[test]
    fn binom_rejects_non_finite() {
        assert!(matches!(binom(f64::NAN, 3), Err(FracError::Domain(_))));
        assert!(matches!(binom(f64::INFINITY, 0), Err(FracError::Domain(_))));
    }

    #[test]
    fn falling_factorial_examples() {
        assert_eq!(falling_factorial(3.0, 2).unwrap(), 6.0);
        assert_eq!(falling_factorial(0.5, 1).unwrap(), 0.5);
        assert_eq!(falling_factorial(7.25, 0).unwrap(), 1.0);
        // both gammas have poles; the product is the limit
        assert_eq!(falling_factorial(-2.0, 2).unwrap(), 6.0);
    }

    #[test]
    fn falling_factorial_gamma_matches_product_for_integer_counts() {
        for &x in &[3.5, 10.25, 0.7] {
            let a = falling_factorial_gamma(x, 3.0).unwrap();
            let b = falling_factorial(x, 3).unwrap();
            assert!(rel(a, b) < 1e-14);
        }
        // general route for a non-integer count
        let g = falling_factorial_gamma(4.5, 2.5).unwrap();
        let expect = statrs::function::gamma::gamma(5.5) / statrs::function::gamma::gamma(3.0);
        assert!(rel(g, expect) < 1e-12);
    }

    #[test]
    fn falling_factorial_gamma_poles() {
        // Gamma(0) in the numerator with a finite denominator
        assert!(matches!(
            falling_factorial_gamma(-1.0, 0.5),
            Err(FracError::Domain(_))
        ));
        // denominator pole only
        assert_eq!(falling_factorial_gamma(0.5, 2.5).unwrap(), 0.0);
        // cancelling poles: Gamma(-2 + e) / Gamma(-4 + e) -> (-1)^2 * 4! / 2! = 12
        let v = falling_factorial_gamma(-3.0, 2.0).unwrap();
        assert_eq!(v, falling_factorial(-3.0, 2).unwrap());
        assert!(rel(v, 12.0) < 1e-14);
        let w = falling_factorial_gamma(-3.0, -1.0).unwrap();
        // Gamma(-2) / Gamma(-1) -> (-1)^(2-1) 1!/2! = -0.5
        assert!(rel(w, -0.5) < 1e-14);
    }

    #[test]
    fn factorial_identity_against_gamma() {
        let alpha: f64 = 0.3;
        let n = 4usize;
        let lhs = if n.is_multiple_of(2) { 1.0 } else { -1.0 } * binom(alpha, n).unwrap();
        let x = n as f64 - (1.0 + alpha);
        let rhs = falling_factorial_gamma(x, -(1.0 + alpha)).unwrap()
            / statrs::function::gamma::gamma(-alpha);
        assert!(rel(lhs, rhs) < 1e-12, "lhs={lhs} rhs={rhs}");
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(
            make_kernel(1.0, 3).unwrap().coeffs(),
            &[1.0, -1.0, 0.0, 0.0]
        );
        assert_eq!(make_kernel(0.5, 2).unwrap().coeffs(), &[1.0, -0.5, -0.125]);
        assert_eq!(make_kernel(-0.5, 2).unwrap().coeffs(), &[1.0, 0.5, 0.375]);
        assert_eq!(make_kernel(0.3, 0).unwrap().truncation(), 0);
    }

    #[test]
    fn partial_sum_examples() {
        assert_eq!(partial_sum(0.5, 1).unwrap(), 0.5);
        assert_eq!(partial_sum(1.0, 0).unwrap(), 1.0);
        let lhs = partial_sum(0.3, 50).unwrap();
        let rhs = binom(-0.7, 50).unwrap();
        assert!(rel(lhs, rhs) < 1e-12);
    }

    #[test]
    fn recurrence_matches_reversed_product() {
        for step in -9..=9 {
            let alpha = step as f64 / 10.0;
            let kernel = make_kernel(alpha, 1000).unwrap();
            for (k, &c) in kernel.coeffs().iter().enumerate() {
                let direct = (0..k)
                    .rev()
                    .fold(1.0, |acc, i| acc * ((i as f64 - alpha) / (i as f64 + 1.0)));
                assert!(rel(c, direct) < 1e-12, "alpha={alpha} k={k}");
            }
        }
    }

    #[test]
    fn sign_pattern() {
        for step in 1..=9 {
            let alpha = step as f64 / 10.0;
            let pos = make_kernel(alpha, 500).unwrap();
            assert!(pos.coeffs()[1..].iter().all(|&c| c < 0.0));
            let neg = make_kernel(-alpha, 500).unwrap();
            assert!(neg.coeffs().iter().all(|&c| c > 0.0));
        }
    }

    #[test]
    fn order_validation() {
        assert!(FracOrder::in_unit_interval(0.5).is_ok());
        assert!(FracOrder::in_unit_interval(0.0).is_err());
        assert!(FracOrder::in_unit_interval(1.0).is_err());
        assert!(FracOrder::new(f64::NAN).is_err());
        let o: FracOrder = serde_json::from_str("0.25").unwrap();
        assert_eq!(o.value(), 0.25);
        assert!(serde_json::from_str::<FracOrder>("1e999").is_err());
    }
}
