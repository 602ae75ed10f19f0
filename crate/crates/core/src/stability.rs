//! Spectral analysis of `tau (1 - tau^{-1})^alpha - A`.
//!
//! Under the Z-transform the operator `tau (1 - tau^{-1})^alpha` becomes
//! multiplication by the symbol `f(z) = z (1 - z^{-1})^alpha`. On
//! `l_{2,rho}` the equation with matrix `A` is uniquely solvable exactly when
//! the curve `f(S_rho)` misses the spectrum of `A`, and the solution operator
//! is causal once this holds for every radius above `rho`.
//!
//! For a scalar real eigenvalue `lambda` the picture is explicit: `f` maps the
//! real axis outside the unit disc onto `(-inf, -2^alpha) U (0, inf)`, so
//! `lambda` is compatible with decay only in `[-2^alpha, 0]`.

use std::f64::consts::PI;
use std::io::Write;

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::binomial::FracOrder;
use crate::circle::{circle_points, theta};
use crate::error::{FracError, Result};
use crate::io::fmt_f64;

/// Default relative distance below which a sampled curve point counts as
/// hitting an eigenvalue.
pub const DEFAULT_CURVE_TOL: f64 = 1e-9;

/// Default tolerance for deciding that a real eigenvalue sits on `0` or `-2^alpha`.
pub const DEFAULT_BOUNDARY_TOL: f64 = 1e-12;

/// Default number of curve samples.
pub const DEFAULT_CURVE_SAMPLES: usize = 1 << 12;

/// A square complex matrix acting on `C^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    entries: DMatrix<Complex64>,
}

impl OperatorMatrix {
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let d = rows.len();
        if d == 0 {
            return Err(FracError::Invalid(
                "matrix must have at least one row".into(),
            ));
        }
        for row in rows {
            if row.len() != d {
                return Err(FracError::DimensionMismatch {
                    expected: d,
                    found: row.len(),
                });
            }
        }
        let entries = DMatrix::from_fn(d, d, |i, j| rows[i][j]);
        Self::from_matrix(entries)
    }

    pub fn from_matrix(entries: DMatrix<Complex64>) -> Result<Self> {
        if !entries.is_square() || entries.nrows() == 0 {
            return Err(FracError::Invalid(format!(
                "matrix must be square and nonempty, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        if entries
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(FracError::domain("matrix entries must be finite"));
        }
        Ok(OperatorMatrix { entries })
    }

    pub fn scalar(lambda: Complex64) -> Self {
        OperatorMatrix {
            entries: DMatrix::from_element(1, 1, lambda),
        }
    }

    pub fn diagonal(values: &[Complex64]) -> Result<Self> {
        if values.is_empty() {
            return Err(FracError::Invalid(
                "diagonal needs at least one entry".into(),
            ));
        }
        let n = values.len();
        Self::from_matrix(DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                values[i]
            } else {
                Complex64::new(0.0, 0.0)
            }
        }))
    }

    pub fn zeros(d: usize) -> Self {
        OperatorMatrix {
            entries: DMatrix::zeros(d.max(1), d.max(1)),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[(i, j)]
    }

    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        let d = self.dim();
        (0..d)
            .map(|i| (0..d).map(|j| self.entries[(i, j)] * x[j]).sum())
            .collect()
    }

    /// Largest singular value.
    pub fn operator_norm(&self) -> f64 {
        self.entries
            .clone()
            .singular_values()
            .iter()
            .copied()
            .fold(0.0, f64::max)
    }

    pub fn to_pairs(&self) -> Vec<Vec<[f64; 2]>> {
        let d = self.dim();
        (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| [self.get(i, j).re, self.get(i, j).im])
                    .collect()
            })
            .collect()
    }

    /// Rows of `[re, im]` pairs, the matrix layout used in JSON files.
    pub fn from_pairs(rows: &[Vec<[f64; 2]>]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
            .collect();
        Self::from_rows(&rows)
    }
}

/// `f(z) = z (1 - z^{-1})^alpha` with the principal branch, `|z| > 1`.
pub fn symbol(z: Complex64, alpha: f64) -> Result<Complex64> {
    FracOrder::new(alpha)?;
    if z.norm().is_nan() || z.norm() <= 1.0 {
        return Err(FracError::domain(format!(
            "symbol needs |z| > 1, got |z| = {}",
            z.norm()
        )));
    }
    Ok(symbol_unchecked(z, alpha))
}

// 1 - 1/z stays in the disc of radius 1 around 1, away from the branch cut.
#[inline]
fn symbol_unchecked(z: Complex64, alpha: f64) -> Complex64 {
    z * (Complex64::new(1.0, 0.0) - z.inv()).powf(alpha)
}

/// `f'(z) = (1 - w)^{alpha - 1} (1 - w + alpha w)` with `w = 1/z`.
fn symbol_derivative(z: Complex64, alpha: f64) -> Complex64 {
    let w = z.inv();
    let one = Complex64::new(1.0, 0.0);
    (one - w).powf(alpha - 1.0) * (one - w + w * alpha)
}

/// `mu (1 - 1/mu)^alpha`, the symbol on the positive real axis. Strictly
/// increasing from 0 to infinity on `(1, inf)`.
fn radial_symbol(mu: f64, alpha: f64) -> f64 {
    mu * (1.0 - 1.0 / mu).powf(alpha)
}

/// `t (1 + 1/t)^alpha = -f(-t)`, increasing from `2^alpha` on `(1, inf)`.
fn reflected_symbol(t: f64, alpha: f64) -> f64 {
    t * (1.0 + 1.0 / t).powf(alpha)
}

/// Solves `g(x) = target` for increasing `g` on `(1, inf)` by bisection.
fn invert_increasing(g: impl Fn(f64) -> f64, target: f64) -> f64 {
    let mut lo = 1.0_f64;
    let mut hi = 2.0_f64;
    while g(hi) <= target {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) > target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Samples of `f` on `S_rho`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolCurve {
    pub rho: f64,
    pub alpha: FracOrder,
    /// `(z_j, f(z_j))` ordered by angle `2 pi j / M`.
    pub samples: Vec<(Complex64, Complex64)>,
}

impl SymbolCurve {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn values(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.samples.iter().map(|&(_, f)| f)
    }

    /// `theta,re_z,im_z,re_f,im_f` rows.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut csv = csv::Writer::from_writer(writer);
        csv.write_record(["theta", "re_z", "im_z", "re_f", "im_f"])?;
        let m = self.samples.len();
        for (j, (z, f)) in self.samples.iter().enumerate() {
            csv.write_record([
                fmt_f64(theta(j, m)),
                fmt_f64(z.re),
                fmt_f64(z.im),
                fmt_f64(f.re),
                fmt_f64(f.im),
            ])?;
        }
        csv.flush()?;
        Ok(())
    }
}

fn check_radius(rho: f64) -> Result<()> {
    if rho.is_finite() && rho > 1.0 {
        Ok(())
    } else {
        Err(FracError::domain(format!(
            "radius must exceed 1, got {rho}"
        )))
    }
}

pub fn symbol_curve(rho: f64, alpha: f64, samples: usize) -> Result<SymbolCurve> {
    let order = FracOrder::new(alpha)?;
    check_radius(rho)?;
    if samples < 8 {
        return Err(FracError::domain(format!(
            "need at least 8 samples, got {samples}"
        )));
    }
    let samples = circle_points(rho, samples)
        .into_iter()
        .map(|z| (z, symbol_unchecked(z, alpha)))
        .collect();
    Ok(SymbolCurve {
        rho,
        alpha: order,
        samples,
    })
}

/// `min_j |(1 - z_j^{-1})^alpha| - (1 - 1/rho)^alpha` over `samples` points
/// of `S_rho`. Never meaningfully negative: the minimum sits at `z = rho`.
pub fn binom_estimate_margin(rho: f64, alpha: f64, samples: usize) -> Result<f64> {
    FracOrder::in_unit_interval(alpha)?;
    check_radius(rho)?;
    if samples == 0 {
        return Err(FracError::domain("need at least one sample"));
    }
    let one = Complex64::new(1.0, 0.0);
    let min = circle_points(rho, samples)
        .into_iter()
        .map(|z| (one - z.inv()).powf(alpha).norm())
        .fold(f64::INFINITY, f64::min);
    Ok(min - (1.0 - 1.0 / rho).powf(alpha))
}

/// Eigenvalues of `A` with multiplicity, from a complex Schur decomposition.
pub fn spectrum(a: &OperatorMatrix) -> Result<Vec<Complex64>> {
    if a.entries
        .iter()
        .any(|c| !c.re.is_finite() || !c.im.is_finite())
    {
        return Err(FracError::domain("matrix entries must be finite"));
    }
    let schur = Schur::try_new(a.entries.clone(), f64::EPSILON, 100_000)
        .ok_or_else(|| FracError::domain("Schur iteration did not converge"))?;
    let eig = schur
        .eigenvalues()
        .ok_or_else(|| FracError::domain("Schur form is not triangular"))?;
    Ok(eig.iter().copied().collect())
}

/// `r(A) = max |lambda|`.
pub fn spectral_radius(a: &OperatorMatrix) -> Result<f64> {
    Ok(spectrum(a)?.iter().map(|l| l.norm()).fold(0.0, f64::max))
}

/// Smallest `rho*` (up to bisection precision) with `mu (1 - 1/mu)^alpha > r(A)`
/// for every `mu > rho*`. Beyond it `tau (1 - tau^{-1})^alpha - A` is
/// invertible on `l_{2,mu}` with causal inverse. Returns 1 for `r(A) = 0`.
pub fn causal_radius(a: &OperatorMatrix, alpha: f64) -> Result<f64> {
    FracOrder::in_unit_interval(alpha)?;
    let r = spectral_radius(a)?;
    Ok(causal_radius_for(r, alpha))
}

pub(crate) fn causal_radius_for(spectral_radius: f64, alpha: f64) -> f64 {
    if spectral_radius == 0.0 {
        return 1.0;
    }
    invert_increasing(|mu| radial_symbol(mu, alpha), spectral_radius)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InvertibilityReport {
    pub invertible: bool,
    /// Smallest `|f(z) - lambda|` over curve points and eigenvalues.
    pub min_distance: f64,
    #[serde(serialize_with = "ser_complex")]
    pub nearest_eigenvalue: Complex64,
    #[serde(serialize_with = "ser_complex")]
    pub nearest_point: Complex64,
}

/// Checks whether `f(S_rho)` keeps away from `sigma(A)`.
///
/// Each eigenvalue is compared against `samples` curve points; the best
/// sample is then refined by a golden-section search in the angle. An
/// eigenvalue closer than `tol (1 + |lambda|)` to the curve makes the
/// operator count as non-invertible.
pub fn invertibility_check(
    a: &OperatorMatrix,
    rho: f64,
    alpha: f64,
    samples: usize,
    tol: f64,
) -> Result<InvertibilityReport> {
    let curve = symbol_curve(rho, alpha, samples)?;
    let m = curve.len();
    let mut report = InvertibilityReport {
        invertible: true,
        min_distance: f64::INFINITY,
        nearest_eigenvalue: Complex64::new(0.0, 0.0),
        nearest_point: Complex64::new(0.0, 0.0),
    };
    for lambda in spectrum(a)? {
        let (j, _) = curve
            .values()
            .map(|f| (f - lambda).norm())
            .enumerate()
            .fold(
                (0, f64::INFINITY),
                |best, (j, d)| if d < best.1 { (j, d) } else { best },
            );
        let step = 2.0 * PI / m as f64;
        let centre = theta(j, m);
        let dist =
            |t: f64| (symbol_unchecked(Complex64::from_polar(rho, t), alpha) - lambda).norm();
        let t = golden_section(dist, centre - step, centre + step);
        let d = dist(t).min((curve.samples[j].1 - lambda).norm());
        if d < report.min_distance {
            report.min_distance = d;
            report.nearest_eigenvalue = lambda;
            report.nearest_point = if dist(t) <= (curve.samples[j].1 - lambda).norm() {
                Complex64::from_polar(rho, t)
            } else {
                curve.samples[j].0
            };
        }
        if d < tol * (1.0 + lambda.norm()) {
            report.invertible = false;
        }
    }
    Ok(report)
}

fn golden_section(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..100 {
        if (b - a).abs() < 1e-15 {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    /// `lambda` in `(-2^alpha, 0)`: the zero solution is asymptotically stable.
    SufficientStable,
    /// `lambda` lies in `f(S_mu)` for some `mu > 1`; stability is impossible.
    NecessaryFail,
    /// `lambda` is `0` or `-2^alpha`; neither condition decides.
    Boundary,
    /// Complex `lambda` outside the range of `f`; the sufficient condition is
    /// not automated for this case.
    Indeterminate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Witness {
    #[serde(serialize_with = "ser_complex")]
    pub lambda: Complex64,
    /// Point `|z| > 1` with `f(z) = lambda`.
    #[serde(serialize_with = "ser_opt_complex")]
    pub z: Option<Complex64>,
    /// `|z|`, a radius `mu > 1` with `lambda` in `ran f_mu`.
    pub radius: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StabilityVerdict {
    pub classification: Classification,
    pub witness: Option<Witness>,
}

impl StabilityVerdict {
    fn without_preimage(classification: Classification, lambda: Complex64) -> Self {
        StabilityVerdict {
            classification,
            witness: Some(Witness {
                lambda,
                z: None,
                radius: None,
            }),
        }
    }

    fn fail(lambda: Complex64, z: Complex64) -> Self {
        StabilityVerdict {
            classification: Classification::NecessaryFail,
            witness: Some(Witness {
                lambda,
                z: Some(z),
                radius: Some(z.norm()),
            }),
        }
    }
}

fn ser_complex<S: serde::Serializer>(c: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    [c.re, c.im].serialize(s)
}

fn ser_opt_complex<S: serde::Serializer>(
    c: &Option<Complex64>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    c.map(|c| [c.re, c.im]).serialize(s)
}

/// Matignon-type classification of a scalar eigenvalue with the default tolerance.
pub fn matignon_check(lambda: Complex64, alpha: f64) -> Result<StabilityVerdict> {
    matignon_check_with_tol(lambda, alpha, DEFAULT_BOUNDARY_TOL)
}

/// Real `lambda` (|Im| within `tol (1 + |lambda|)`) is classified in closed
/// form. Complex `lambda` is searched for a preimage `f(z) = lambda` with
/// `|z| > 1`; finding one is a necessary-condition failure, otherwise the
/// verdict is [`Classification::Indeterminate`].
pub fn matignon_check_with_tol(
    lambda: Complex64,
    alpha: f64,
    tol: f64,
) -> Result<StabilityVerdict> {
    FracOrder::in_unit_interval(alpha)?;
    if !lambda.re.is_finite() || !lambda.im.is_finite() {
        return Err(FracError::domain("eigenvalue must be finite"));
    }
    let scale = tol * (1.0 + lambda.norm());
    let edge = 2f64.powf(alpha);
    if lambda.im.abs() <= scale {
        let x = lambda.re;
        if x.abs() <= scale || (x + edge).abs() <= scale {
            return Ok(StabilityVerdict::without_preimage(
                Classification::Boundary,
                lambda,
            ));
        }
        if x > -edge && x < 0.0 {
            return Ok(StabilityVerdict::without_preimage(
                Classification::SufficientStable,
                lambda,
            ));
        }
        let z = if x > 0.0 {
            Complex64::new(invert_increasing(|mu| radial_symbol(mu, alpha), x), 0.0)
        } else {
            Complex64::new(-invert_increasing(|t| reflected_symbol(t, alpha), -x), 0.0)
        };
        return Ok(StabilityVerdict::fail(lambda, z));
    }
    Ok(match symbol_preimage(lambda, alpha) {
        Some(z) => StabilityVerdict::fail(lambda, z),
        None => StabilityVerdict::without_preimage(Classification::Indeterminate, lambda),
    })
}

/// Damped Newton for `f(z) = lambda` over `|z| > 1`, started from a grid of
/// radii and angles.
pub fn symbol_preimage(lambda: Complex64, alpha: f64) -> Option<Complex64> {
    let target_tol = 1e-13 * (1.0 + lambda.norm());
    let radii = [
        1.01,
        1.1,
        1.5,
        2.0,
        4.0,
        1.0 + lambda.norm(),
        2.0 * (1.0 + lambda.norm()),
    ];
    let angles = 24;
    for &r in &radii {
        for k in 0..angles {
            let t = 2.0 * PI * (k as f64 + 0.5) / angles as f64;
            if let Some(z) = newton(Complex64::from_polar(r, t), lambda, alpha, target_tol) {
                return Some(z);
            }
        }
    }
    None
}

fn newton(mut z: Complex64, lambda: Complex64, alpha: f64, tol: f64) -> Option<Complex64> {
    let mut res = (symbol_unchecked(z, alpha) - lambda).norm();
    for _ in 0..200 {
        if res <= tol {
            return (z.norm() > 1.0 + 1e-12).then_some(z);
        }
        let step = (symbol_unchecked(z, alpha) - lambda) / symbol_derivative(z, alpha);
        if !step.re.is_finite() || !step.im.is_finite() {
            return None;
        }
        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let cand = z - step * t;
            if cand.norm() > 1.0 {
                let r = (symbol_unchecked(cand, alpha) - lambda).norm();
                if r < res {
                    z = cand;
                    res = r;
                    accepted = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if !accepted {
            return None;
        }
    }
    (res <= tol && z.norm() > 1.0 + 1e-12).then_some(z)
}
