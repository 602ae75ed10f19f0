//! Explicit solvers for fractional initial value problems on `N`.
//!
//! The Riemann-Liouville problem `tau (1 - tau^{-1})^alpha u = F(u) + delta_{-1} x`
//! is solved by
//!
//! ```text
//! u_0 = x,   u_{n+1} = b_{n+1} x + sum_{k=0}^{n} b_{n-k} F(u)_k,
//! ```
//!
//! with `b_j = (-1)^j C(-alpha, j)`, the kernel of the fractional sum. The
//! Caputo problem replaces `b_{n+1} x` by `x`. Since `F(u)_k` only depends on
//! `u_k`, both recursions are explicit. Each step sums over the whole past,
//! so a solve costs `O(N^2 d)` for `d`-dimensional states with a linear
//! right-hand side.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::binomial::{make_kernel, partial_sum, FracOrder};
use crate::error::{FracError, Result};
use crate::operators::require_natural;
use crate::sequence::{convolve_window, vector_norm, WeightedSequence};
use crate::stability::{causal_radius, OperatorMatrix};

/// Weight used for solutions of nonlinear problems, where no growth bound is known.
const POINTWISE_RHO: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IvpKind {
    #[serde(rename = "rl")]
    RiemannLiouville,
    #[serde(rename = "caputo")]
    Caputo,
    #[serde(rename = "gl")]
    GrunwaldLetnikov,
}

impl fmt::Display for IvpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IvpKind::RiemannLiouville => "rl",
            IvpKind::Caputo => "caputo",
            IvpKind::GrunwaldLetnikov => "gl",
        })
    }
}

pub type PointwiseMap = Arc<dyn Fn(&[Complex64]) -> Vec<Complex64> + Send + Sync>;

/// `F(u)_n = A u_n` or `F(u)_n = f(u_n)`.
#[derive(Clone)]
pub enum RightHandSide {
    Linear(OperatorMatrix),
    Pointwise(PointwiseMap),
}

impl fmt::Debug for RightHandSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RightHandSide::Linear(a) => f.debug_tuple("Linear").field(a).finish(),
            RightHandSide::Pointwise(_) => f.write_str("Pointwise(..)"),
        }
    }
}

impl RightHandSide {
    /// `F = 0` on `C^d`.
    pub fn zero(d: usize) -> Self {
        RightHandSide::Linear(OperatorMatrix::zeros(d))
    }

    pub fn pointwise<F>(f: F) -> Self
    where
        F: Fn(&[Complex64]) -> Vec<Complex64> + Send + Sync + 'static,
    {
        RightHandSide::Pointwise(Arc::new(f))
    }

    pub fn eval(&self, u: &[Complex64]) -> Result<Vec<Complex64>> {
        match self {
            RightHandSide::Linear(a) => {
                if a.dim() != u.len() {
                    return Err(FracError::DimensionMismatch {
                        expected: a.dim(),
                        found: u.len(),
                    });
                }
                Ok(a.apply(u))
            }
            RightHandSide::Pointwise(f) => {
                let out = f(u);
                if out.len() != u.len() {
                    return Err(FracError::DimensionMismatch {
                        expected: u.len(),
                        found: out.len(),
                    });
                }
                if out.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
                    return Err(FracError::domain(
                        "right-hand side returned a non-finite value",
                    ));
                }
                Ok(out)
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct IvpSpec {
    pub kind: IvpKind,
    pub alpha: FracOrder,
    pub x0: Vec<Complex64>,
    pub rhs: RightHandSide,
    /// Number of steps `N`; the solution holds `u_0..=u_N`.
    pub steps: usize,
    /// Grid step, used by the Grünwald-Letnikov kind only.
    pub h: f64,
}

impl IvpSpec {
    pub fn new(
        kind: IvpKind,
        alpha: f64,
        x0: Vec<Complex64>,
        rhs: RightHandSide,
        steps: usize,
    ) -> Result<Self> {
        let spec = IvpSpec {
            kind,
            alpha: FracOrder::new(alpha)?,
            x0,
            rhs,
            steps,
            h: 1.0,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Scalar linear problem `F(u) = lambda u` with `x0 = x`.
    pub fn scalar(
        kind: IvpKind,
        alpha: f64,
        lambda: Complex64,
        x: Complex64,
        steps: usize,
    ) -> Result<Self> {
        Self::new(
            kind,
            alpha,
            vec![x],
            RightHandSide::Linear(OperatorMatrix::scalar(lambda)),
            steps,
        )
    }

    pub fn with_step(mut self, h: f64) -> Result<Self> {
        self.h = h;
        self.validate()?;
        Ok(self)
    }

    pub fn with_kind(mut self, kind: IvpKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn dim(&self) -> usize {
        self.x0.len()
    }

    pub fn validate(&self) -> Result<()> {
        self.alpha.require_unit_interval()?;
        if self.steps < 1 {
            return Err(FracError::domain("steps must be at least 1"));
        }
        if !(self.h.is_finite() && self.h > 0.0) {
            return Err(FracError::domain(format!(
                "step h must be positive, got {}",
                self.h
            )));
        }
        if self.x0.is_empty() {
            return Err(FracError::Invalid(
                "initial value must have at least one component".into(),
            ));
        }
        if self
            .x0
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(FracError::domain("initial value must be finite"));
        }
        if let RightHandSide::Linear(a) = &self.rhs {
            if a.dim() != self.x0.len() {
                return Err(FracError::DimensionMismatch {
                    expected: a.dim(),
                    found: self.x0.len(),
                });
            }
        }
        Ok(())
    }

    /// `h^alpha` for the GL kind, 1 otherwise.
    fn rhs_scale(&self) -> f64 {
        match self.kind {
            IvpKind::GrunwaldLetnikov => self.h.powf(self.alpha.value()),
            _ => 1.0,
        }
    }

    /// Weight attached to the solution: one above the causal radius for a
    /// linear right-hand side, a fixed value otherwise.
    fn solution_rho(&self) -> Result<f64> {
        match &self.rhs {
            RightHandSide::Linear(a) => {
                let scaled = OperatorMatrix::from_matrix(
                    a.matrix() * Complex64::new(self.rhs_scale(), 0.0),
                )?;
                Ok(causal_radius(&scaled, self.alpha.value())? + 1.0)
            }
            RightHandSide::Pointwise(_) => Ok(POINTWISE_RHO),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: IvpSpecJson = serde_json::from_str(text)?;
        let x0: Vec<Complex64> = raw
            .x0
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        let rhs = match raw.a {
            Some(rows) => RightHandSide::Linear(OperatorMatrix::from_pairs(&rows)?),
            None => RightHandSide::zero(x0.len()),
        };
        let spec = IvpSpec {
            kind: raw.kind,
            alpha: FracOrder::new(raw.alpha)?,
            x0,
            rhs,
            steps: raw.steps,
            h: raw.h,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Fails for pointwise right-hand sides, which have no JSON form.
    pub fn to_json(&self) -> Result<String> {
        let a = match &self.rhs {
            RightHandSide::Linear(a) => Some(a.to_pairs()),
            RightHandSide::Pointwise(_) => {
                return Err(FracError::Invalid(
                    "pointwise right-hand sides cannot be serialized".into(),
                ))
            }
        };
        let raw = IvpSpecJson {
            kind: self.kind,
            alpha: self.alpha.value(),
            x0: self.x0.iter().map(|c| [c.re, c.im]).collect(),
            a,
            steps: self.steps,
            h: self.h,
        };
        Ok(serde_json::to_string(&raw)?)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IvpSpecJson {
    kind: IvpKind,
    alpha: f64,
    x0: Vec<[f64; 2]>,
    #[serde(rename = "A", default)]
    a: Option<Vec<Vec<[f64; 2]>>>,
    steps: usize,
    #[serde(default = "unit_step")]
    h: f64,
}

fn unit_step() -> f64 {
    1.0
}

/// Solution on the grid `t = n h`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSequence {
    pub h: f64,
    pub seq: WeightedSequence,
}

impl GridSequence {
    pub fn time(&self, n: i64) -> f64 {
        n as f64 * self.h
    }
}

fn require_kind(spec: &IvpSpec, kind: IvpKind) -> Result<()> {
    if spec.kind != kind {
        return Err(FracError::Invalid(format!(
            "expected a {kind} problem, got {}",
            spec.kind
        )));
    }
    Ok(())
}

/// Shared forward recursion. `rl` selects the `b_{n+1} x` initial term.
fn recurse(spec: &IvpSpec, rl: bool) -> Result<WeightedSequence> {
    spec.validate()?;
    let d = spec.dim();
    let n_steps = spec.steps;
    let b = make_kernel(-spec.alpha.value(), n_steps)?;
    let b = b.coeffs();
    let scale = spec.rhs_scale();

    let mut u: Vec<Complex64> = Vec::with_capacity((n_steps + 1) * d);
    let mut f: Vec<Complex64> = Vec::with_capacity(n_steps * d);
    u.extend_from_slice(&spec.x0);
    for n in 0..n_steps {
        let fn_ = spec.rhs.eval(&u[n * d..(n + 1) * d])?;
        f.extend(fn_.into_iter().map(|c| c * scale));
        let init = if rl { b[n + 1] } else { 1.0 };
        for i in 0..d {
            let mut acc = spec.x0[i] * init;
            for k in 0..=n {
                acc += f[k * d + i] * b[n - k];
            }
            u.push(acc);
        }
    }
    WeightedSequence::new(0, d, spec.solution_rho()?, u)
}

/// Riemann-Liouville solution `u_0..=u_N`.
pub fn solve_rl(spec: &IvpSpec) -> Result<WeightedSequence> {
    require_kind(spec, IvpKind::RiemannLiouville)?;
    recurse(spec, true)
}

/// Caputo solution `u_0..=u_N`.
pub fn solve_caputo(spec: &IvpSpec) -> Result<WeightedSequence> {
    require_kind(spec, IvpKind::Caputo)?;
    recurse(spec, false)
}

/// Grünwald-Letnikov solution: the RL recursion with `F` replaced by `h^alpha F`.
pub fn solve_gl(spec: &IvpSpec) -> Result<GridSequence> {
    require_kind(spec, IvpKind::GrunwaldLetnikov)?;
    Ok(GridSequence {
        h: spec.h,
        seq: recurse(spec, true)?,
    })
}

/// Dispatches on `spec.kind`. GL output is returned on index `n`; its time is `n h`.
pub fn solve(spec: &IvpSpec) -> Result<WeightedSequence> {
    match spec.kind {
        IvpKind::RiemannLiouville => solve_rl(spec),
        IvpKind::Caputo => solve_caputo(spec),
        IvpKind::GrunwaldLetnikov => Ok(solve_gl(spec)?.seq),
    }
}

/// Defect of `u` in the sequence form of the problem,
/// `tau (1 - tau^{-1})^alpha u - F(u) - forcing`, on `-1..N-1`.
///
/// The forcing is `delta_{-1} x` for RL and GL and
/// `(1 - tau^{-1})^alpha chi_{Z>=-1} x` for Caputo, the latter evaluated in
/// closed form. `F(u)` is restricted to `N`, so it vanishes at `-1`.
pub fn residual(spec: &IvpSpec, u: &WeightedSequence) -> Result<WeightedSequence> {
    Ok(defect(spec, u)?.0)
}

/// Size of the terms whose cancellation [`residual`] measures:
/// `sum_k |c_k| |u_{n+1-k}| + |F(u)_n| + |forcing_n|` on `-1..N-1`.
///
/// Rounding makes the residual roughly `eps` times this, so it is the
/// natural scale for a relative check on growing solutions.
pub fn residual_scale(spec: &IvpSpec, u: &WeightedSequence) -> Result<Vec<f64>> {
    Ok(defect(spec, u)?.1)
}

fn defect(spec: &IvpSpec, u: &WeightedSequence) -> Result<(WeightedSequence, Vec<f64>)> {
    spec.validate()?;
    require_natural(u)?;
    if u.len() < 2 {
        return Err(FracError::domain(format!(
            "residual needs u_0..u_N with N >= 1, got {} values",
            u.len()
        )));
    }
    if u.dim() != spec.dim() {
        return Err(FracError::DimensionMismatch {
            expected: spec.dim(),
            found: u.dim(),
        });
    }
    let d = u.dim();
    let big_n = u.len() - 1;
    let alpha = spec.alpha.value();
    let kernel = make_kernel(alpha, big_n)?;
    let scale = spec.rhs_scale();

    // ((1 - tau^{-1})^alpha u)_{n+1} for n = -1..N-1
    let mut out = convolve_window(&kernel, u, 0, big_n).shift(1);
    let abs_kernel: Vec<f64> = kernel.coeffs().iter().map(|c| c.abs()).collect();
    let mut sizes = Vec::with_capacity(big_n);
    for n in -1..big_n as i64 - 1 {
        let m = (n + 1) as usize;
        let mut size: f64 = (0..=m)
            .map(|k| abs_kernel[k] * u.norm_at((m - k) as i64))
            .sum();

        let f = if n >= 0 {
            spec.rhs
                .eval(u.get(n).unwrap())?
                .into_iter()
                .map(|c| c * scale)
                .collect()
        } else {
            vec![Complex64::new(0.0, 0.0); d]
        };
        let forcing_weight = match spec.kind {
            IvpKind::Caputo => partial_sum(alpha, m)?,
            _ if n == -1 => 1.0,
            _ => 0.0,
        };
        let forcing: Vec<Complex64> = spec.x0.iter().map(|x| x * forcing_weight).collect();
        size += vector_norm(&f) + vector_norm(&forcing);
        sizes.push(size);

        let slot = out.get_mut(n).unwrap();
        for i in 0..d {
            slot[i] -= f[i] + forcing[i];
        }
    }
    Ok((out, sizes))
}

/// First index from which `|u_n|` is strictly decreasing up to the end of the
/// window. `None` if even the last step does not decrease.
pub fn decay_onset(u: &WeightedSequence) -> Option<i64> {
    let norms: Vec<f64> = (u.start()..u.end()).map(|k| u.norm_at(k)).collect();
    if norms.len() < 2 {
        return None;
    }
    let mut onset = norms.len() - 1;
    while onset > 0 && norms[onset] < norms[onset - 1] {
        onset -= 1;
    }
    if onset == norms.len() - 1 {
        None
    } else {
        Some(u.start() + onset as i64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn reals(u: &WeightedSequence) -> Vec<f64> {
        u.raw().iter().map(|z| z.re).collect()
    }

    fn max_norm(r: &WeightedSequence) -> f64 {
        r.raw().iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Independent Caputo solver through
    /// `((1 - tau^{-1})^alpha u)_{n+1} = F(u)_n + partial_sum(alpha, n + 1) u_0`.
    fn caputo_fixed_point(alpha: f64, lambda: f64, x: f64, steps: usize) -> Vec<f64> {
        let c = make_kernel(alpha, steps).unwrap();
        let c = c.coeffs();
        let mut u = vec![x];
        for n in 0..steps {
            let rhs = lambda * u[n] + partial_sum(alpha, n + 1).unwrap() * x;
            let past: f64 = (1..=n + 1).map(|k| c[k] * u[n + 1 - k]).sum();
            u.push(rhs - past);
        }
        u
    }

    #[test]
    fn rl_free_solution_is_sum_kernel() {
        let spec = IvpSpec::new(
            IvpKind::RiemannLiouville,
            0.5,
            vec![c(1.0)],
            RightHandSide::zero(1),
            6,
        )
        .unwrap();
        let u = solve_rl(&spec).unwrap();
        assert_eq!(u.len(), 7);
        assert_eq!(reals(&u)[..4], [1.0, 0.5, 0.375, 0.3125]);
        assert_eq!(reals(&u), make_kernel(-0.5, 6).unwrap().coeffs());
    }

    #[test]
    fn zero_data_gives_zero() {
        let spec = IvpSpec::new(
            IvpKind::RiemannLiouville,
            0.3,
            vec![c(0.0); 2],
            RightHandSide::zero(2),
            20,
        )
        .unwrap();
        assert!(solve_rl(&spec)
            .unwrap()
            .raw()
            .iter()
            .all(|z| z.norm() == 0.0));
    }

    #[test]
    fn zero_matrix_matches_zero_map() {
        let x = vec![c(1.0), Complex64::new(0.5, -2.0)];
        let lin = IvpSpec::new(
            IvpKind::RiemannLiouville,
            0.7,
            x.clone(),
            RightHandSide::zero(2),
            30,
        )
        .unwrap();
        let pw = IvpSpec::new(
            IvpKind::RiemannLiouville,
            0.7,
            x,
            RightHandSide::pointwise(|u| vec![Complex64::new(0.0, 0.0); u.len()]),
            30,
        )
        .unwrap();
        assert_eq!(solve_rl(&lin).unwrap().raw(), solve_rl(&pw).unwrap().raw());
    }

    #[test]
    fn caputo_free_solution_is_constant() {
        let x = vec![c(2.5), Complex64::new(0.0, 1.0)];
        let spec =
            IvpSpec::new(IvpKind::Caputo, 0.4, x.clone(), RightHandSide::zero(2), 25).unwrap();
        let u = solve_caputo(&spec).unwrap();
        for (_, v) in u.iter() {
            assert_eq!(v, &x[..]);
        }
    }

    #[test]
    fn caputo_matches_fixed_point_form() {
        let spec = IvpSpec::scalar(IvpKind::Caputo, 0.5, c(-1.0), c(1.0), 400).unwrap();
        let u = reals(&solve_caputo(&spec).unwrap());
        let v = caputo_fixed_point(0.5, -1.0, 1.0, 400);
        for (n, (a, b)) in u.iter().zip(&v).enumerate() {
            assert!((a - b).abs() < 1e-10, "n={n}: {a} vs {b}");
        }
    }

    #[test]
    fn caputo_decays_for_stable_lambda() {
        let spec = IvpSpec::scalar(IvpKind::Caputo, 0.5, c(-1.0), c(1.0), 512).unwrap();
        let u = solve_caputo(&spec).unwrap();
        let onset = decay_onset(&u).unwrap();
        assert!(onset < 100, "onset {onset}");
        assert!(u.norm_at(512) < 0.1);
    }

    #[test]
    fn residuals_vanish() {
        let a = OperatorMatrix::from_rows(&[
            vec![Complex64::new(-0.4, 0.2), c(0.3)],
            vec![c(-0.1), Complex64::new(0.2, -0.5)],
        ])
        .unwrap();
        let x = vec![c(1.0), Complex64::new(-0.5, 0.25)];
        for kind in [
            IvpKind::RiemannLiouville,
            IvpKind::Caputo,
            IvpKind::GrunwaldLetnikov,
        ] {
            let spec = IvpSpec::new(kind, 0.35, x.clone(), RightHandSide::Linear(a.clone()), 64)
                .unwrap()
                .with_step(0.25)
                .unwrap();
            let u = solve(&spec).unwrap();
            let r = residual(&spec, &u).unwrap();
            assert_eq!(r.start(), -1);
            assert_eq!(r.len(), 64);
            assert!(max_norm(&r) < 1e-12, "{kind}: {}", max_norm(&r));
            let scale = residual_scale(&spec, &u).unwrap();
            assert_eq!(scale.len(), 64);
            assert!(scale.iter().all(|s| *s > 0.0));
        }
    }

    #[test]
    fn perturbed_solution_has_causal_defect() {
        let spec = IvpSpec::scalar(IvpKind::RiemannLiouville, 0.5, c(-0.5), c(1.0), 12).unwrap();
        let mut u = solve_rl(&spec).unwrap();
        u.get_mut(3).unwrap()[0] += 1.0;
        let r = residual(&spec, &u).unwrap();
        for n in -1..2 {
            assert!(r.norm_at(n) < 1e-14, "n={n}");
        }
        assert!(r.norm_at(2) > 0.5);
    }

    #[test]
    fn residual_of_zero_problem() {
        let spec = IvpSpec::new(
            IvpKind::Caputo,
            0.5,
            vec![c(0.0)],
            RightHandSide::zero(1),
            5,
        )
        .unwrap();
        let u = WeightedSequence::zeros(0, 6, 1, 2.0).unwrap();
        assert_eq!(max_norm(&residual(&spec, &u).unwrap()), 0.0);
        let short = WeightedSequence::zeros(0, 1, 1, 2.0).unwrap();
        assert!(residual(&spec, &short).unwrap_err().is_domain());
    }

    #[test]
    fn gl_reductions() {
        let rl = IvpSpec::scalar(IvpKind::RiemannLiouville, 0.5, c(-0.8), c(1.0), 100).unwrap();
        let gl1 = rl.clone().with_kind(IvpKind::GrunwaldLetnikov);
        assert_eq!(
            solve_gl(&gl1).unwrap().seq.raw(),
            solve_rl(&rl).unwrap().raw()
        );

        let gl4 = gl1.with_step(4.0).unwrap();
        let rl2 = IvpSpec::scalar(IvpKind::RiemannLiouville, 0.5, c(-1.6), c(1.0), 100).unwrap();
        let a = solve_gl(&gl4).unwrap();
        assert_eq!(a.time(3), 12.0);
        assert!(
            a.seq
                .max_abs_diff(&solve_rl(&rl2).unwrap().with_rho(a.seq.rho()).unwrap())
                .unwrap()
                < 1e-12
        );

        let free = IvpSpec::new(
            IvpKind::GrunwaldLetnikov,
            0.5,
            vec![c(1.0)],
            RightHandSide::zero(1),
            10,
        )
        .unwrap();
        let h1 = solve_gl(&free).unwrap().seq;
        let h7 = solve_gl(&free.with_step(7.0).unwrap()).unwrap().seq;
        assert_eq!(h1.raw(), h7.raw());
    }

    #[test]
    fn pointwise_rhs() {
        let spec = IvpSpec::new(
            IvpKind::Caputo,
            0.6,
            vec![c(0.5)],
            RightHandSide::pointwise(|u| u.iter().map(|z| z * (1.0 - z)).collect()),
            50,
        )
        .unwrap();
        let u = solve(&spec).unwrap();
        assert!(max_norm(&residual(&spec, &u).unwrap()) < 1e-13);
        assert!(spec.to_json().is_err());

        let bad = IvpSpec::new(
            IvpKind::RiemannLiouville,
            0.6,
            vec![c(0.5)],
            RightHandSide::pointwise(|_| vec![]),
            3,
        )
        .unwrap();
        assert!(matches!(
            solve(&bad),
            Err(FracError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn validation() {
        for alpha in [0.0, 1.0, 1.5, -0.5] {
            assert!(IvpSpec::scalar(IvpKind::RiemannLiouville, alpha, c(-1.0), c(1.0), 4).is_err());
        }
        assert!(IvpSpec::scalar(IvpKind::Caputo, 0.5, c(-1.0), c(1.0), 0).is_err());
        let spec = IvpSpec::scalar(IvpKind::Caputo, 0.5, c(-1.0), c(1.0), 3).unwrap();
        assert!(spec.clone().with_step(0.0).is_err());
        assert!(matches!(solve_rl(&spec), Err(FracError::Invalid(_))));
        let mismatch = IvpSpec::new(
            IvpKind::Caputo,
            0.5,
            vec![c(1.0); 2],
            RightHandSide::zero(3),
            3,
        );
        assert!(matches!(mismatch, Err(FracError::DimensionMismatch { .. })));
    }

    #[test]
    fn json_round_trip() {
        let text =
            r#"{"kind":"gl","alpha":0.5,"x0":[[1.0,0.0]],"A":[[[-1.0,0.0]]],"steps":8,"h":0.5}"#;
        let spec = IvpSpec::from_json(text).unwrap();
        assert_eq!(spec.kind, IvpKind::GrunwaldLetnikov);
        assert_eq!(spec.h, 0.5);
        let again = IvpSpec::from_json(&spec.to_json().unwrap()).unwrap();
        assert_eq!(solve(&spec).unwrap(), solve(&again).unwrap());

        let no_a =
            IvpSpec::from_json(r#"{"kind":"caputo","alpha":0.3,"x0":[[2,0]],"A":null,"steps":4}"#)
                .unwrap();
        assert_eq!(no_a.h, 1.0);
        assert!(reals(&solve(&no_a).unwrap()).iter().all(|&v| v == 2.0));

        assert!(matches!(IvpSpec::from_json("{"), Err(FracError::Json(_))));
        assert!(
            IvpSpec::from_json(r#"{"kind":"rl","alpha":1.5,"x0":[[1,0]],"steps":4}"#)
                .unwrap_err()
                .is_domain()
        );
    }

    #[test]
    fn decay_onset_examples() {
        let u = WeightedSequence::from_real(0, 2.0, &[1.0, 3.0, 2.0, 1.0, 0.5]).unwrap();
        assert_eq!(decay_onset(&u), Some(1));
        let flat = WeightedSequence::from_real(0, 2.0, &[1.0; 4]).unwrap();
        assert_eq!(decay_onset(&flat), None);
    }
}
