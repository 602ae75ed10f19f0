//! Z-transform of finitely supported sequences, sampled on circles `S_rho`.
//!
//! `Z_rho x (z) = sum_k x_k z^{-k}` is unitary from `l_{2,rho}` onto the
//! space of functions on `S_rho` with inner product
//! `(1/2pi) int <F, G> dz/|z|`. On `M` equally spaced points this becomes a
//! scaled discrete Fourier transform, so the inverse is a DFT as well and
//! is exact whenever the window fits into `M` samples.

use std::f64::consts::PI;
use std::io::{BufReader, Read, Write};

use num_complex::Complex64;
use serde::Serialize;

use crate::circle::{root_table, theta, unit_root};
use crate::error::{FracError, Result};
use crate::io::{component_header, fmt_f64, metadata_value, parse_f64, read_metadata};
use crate::sequence::{vector_norm, weight, WeightedSequence};

/// Relative slack `eps` in the growth test `I_{i+1} / I_i > (mu_{i+1} / mu_i)^2 - eps`.
pub const GROWTH_SLACK: f64 = 0.1;

/// Values `F(z_j)` at `z_j = rho exp(2 pi i j / M)`, `j = 0..M`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformSamples {
    rho: f64,
    dim: usize,
    values: Vec<Complex64>,
}

impl TransformSamples {
    pub fn new(rho: f64, dim: usize, values: Vec<Complex64>) -> Result<Self> {
        check_rho(rho)?;
        if dim == 0 || values.is_empty() || !values.len().is_multiple_of(dim) {
            return Err(FracError::Invalid(format!(
                "need a nonempty sample list divisible by dimension {dim}, got {} values",
                values.len()
            )));
        }
        Ok(TransformSamples { rho, dim, values })
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of sample points `M`.
    pub fn len(&self) -> usize {
        self.values.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, j: usize) -> &[Complex64] {
        &self.values[j * self.dim..(j + 1) * self.dim]
    }

    pub fn point(&self, j: usize) -> Complex64 {
        unit_root(j as i64, self.len()) * self.rho
    }

    pub fn raw(&self) -> &[Complex64] {
        &self.values
    }

    /// Writes `# rho=..,dim=..` followed by `theta,re_0,im_0,...` rows.
    pub fn write_csv<W: Write>(&self, mut writer: W) -> Result<()> {
        writeln!(writer, "# rho={},dim={}", fmt_f64(self.rho), self.dim)?;
        let mut csv = csv::Writer::from_writer(writer);
        csv.write_record(component_header("theta", self.dim))?;
        let m = self.len();
        for j in 0..m {
            let mut row = vec![fmt_f64(theta(j, m))];
            for c in self.get(j) {
                row.push(fmt_f64(c.re));
                row.push(fmt_f64(c.im));
            }
            csv.write_record(&row)?;
        }
        csv.flush()?;
        Ok(())
    }

    /// Reads the format produced by [`write_csv`](Self::write_csv). The
    /// samples are assumed equally spaced in the row order given.
    pub fn read_csv<R: Read>(reader: R) -> Result<Self> {
        let mut reader = BufReader::new(reader);
        let meta = read_metadata(&mut reader)?;
        let rho = parse_f64(metadata_value(&meta, "rho")?)?;
        let dim: usize = metadata_value(&meta, "dim")?
            .parse()
            .map_err(|_| FracError::Parse("dim must be a positive integer".into()))?;
        let mut csv = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(reader);
        let mut values = Vec::new();
        for (row_no, record) in csv.records().enumerate() {
            let record = record?;
            if record.len() != 1 + 2 * dim {
                return Err(FracError::Parse(format!(
                    "row {row_no}: expected {} fields, got {}",
                    1 + 2 * dim,
                    record.len()
                )));
            }
            parse_f64(&record[0])?;
            for i in 0..dim {
                values.push(Complex64::new(
                    parse_f64(&record[1 + 2 * i])?,
                    parse_f64(&record[2 + 2 * i])?,
                ));
            }
        }
        Self::new(rho, dim, values)
    }
}

fn check_rho(rho: f64) -> Result<()> {
    if rho.is_finite() && rho > 0.0 {
        Ok(())
    } else {
        Err(FracError::domain(format!(
            "radius must be positive, got {rho}"
        )))
    }
}

fn check_samples(m: usize) -> Result<()> {
    if m == 0 {
        return Err(FracError::domain("need at least one sample point"));
    }
    Ok(())
}

#[inline]
fn root_index(e: i64, m: usize) -> usize {
    e.rem_euclid(m as i64) as usize
}

/// `F(z_j) = sum_k x_k z_j^{-k}` at `M` points of `S_rho`.
pub fn ztransform(x: &WeightedSequence, rho: f64, m: usize) -> Result<TransformSamples> {
    check_rho(rho)?;
    check_samples(m)?;
    let d = x.dim();
    let roots = root_table(m);
    let mut values = vec![Complex64::new(0.0, 0.0); m * d];
    for (k, v) in x.iter() {
        if v.iter().all(|c| c.norm() == 0.0) {
            continue;
        }
        let w = weight(rho, k);
        for j in 0..m {
            let factor = roots[root_index(-(j as i64) * k, m)] * w;
            for (acc, c) in values[j * d..(j + 1) * d].iter_mut().zip(v) {
                *acc += c * factor;
            }
        }
    }
    TransformSamples::new(rho, d, values)
}

/// `x_k = rho^k (1/M) sum_j F_j exp(2 pi i j k / M)` for `k` in
/// `start..start+len`. Exact for sequences supported in the window.
pub fn inverse_ztransform(
    samples: &TransformSamples,
    start: i64,
    len: usize,
) -> Result<WeightedSequence> {
    let m = samples.len();
    if len > m {
        return Err(FracError::Aliasing { len, samples: m });
    }
    let d = samples.dim();
    let roots = root_table(m);
    let mut values = Vec::with_capacity(len * d);
    for k in start..start + len as i64 {
        let mut acc = vec![Complex64::new(0.0, 0.0); d];
        for j in 0..m {
            let w = roots[root_index(j as i64 * k, m)];
            for (a, f) in acc.iter_mut().zip(samples.get(j)) {
                *a += f * w;
            }
        }
        let scale = samples.rho().powi(k as i32) / m as f64;
        values.extend(acc.into_iter().map(|a| a * scale));
    }
    WeightedSequence::new(start, d, samples.rho(), values)
}

/// `sum_k |x_k|^2 rho^{-2k}`.
fn weighted_energy(x: &WeightedSequence, rho: f64) -> f64 {
    x.iter()
        .map(|(k, v)| (vector_norm(v) * weight(rho, k)).powi(2))
        .sum()
}

/// Relative gap between `|x|^2_{2,rho}` and the trapezoidal value of
/// `(1/2pi) int |F|^2 dz/|z|` on `M` points. Zero for `x = 0`.
///
/// The rule is exact once `M` is at least twice the window length.
pub fn parseval_check(x: &WeightedSequence, rho: f64, m: usize) -> Result<f64> {
    let samples = ztransform(x, rho, m)?;
    let lhs = weighted_energy(x, rho);
    if lhs == 0.0 {
        return Ok(0.0);
    }
    let rhs = (0..m)
        .map(|j| vector_norm(samples.get(j)).powi(2))
        .sum::<f64>()
        / m as f64;
    Ok((lhs - rhs).abs() / lhs)
}

/// `max_j |Z(tau x)(z_j) - z_j Z(x)(z_j)|`, which vanishes up to rounding.
pub fn multiplication_equivalence_check(x: &WeightedSequence, rho: f64, m: usize) -> Result<f64> {
    let shifted = ztransform(&x.shift(1), rho, m)?;
    let plain = ztransform(x, rho, m)?;
    let mut worst = 0.0_f64;
    for j in 0..m {
        let z = plain.point(j);
        for (a, b) in shifted.get(j).iter().zip(plain.get(j)) {
            worst = worst.max((a - z * b).norm());
        }
    }
    Ok(worst)
}

/// `int_{S_mu} |Z x|^2 dz/|z| = int_0^{2pi} |F(mu e^{i t})|^2 dt`, by the trapezoidal rule.
pub fn hardy_integral(x: &WeightedSequence, mu: f64, m: usize) -> Result<f64> {
    let samples = ztransform(x, mu, m)?;
    let mean = (0..m)
        .map(|j| vector_norm(samples.get(j)).powi(2))
        .sum::<f64>()
        / m as f64;
    Ok(2.0 * PI * mean)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Support {
    #[serde(rename = "positive")]
    Positive,
    #[serde(rename = "not-positive")]
    NotPositive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SupportReport {
    /// Verdict of the Hardy-growth heuristic.
    pub verdict: Support,
    /// Support read off the stored window.
    pub literal: Support,
    pub agrees: bool,
    pub radii: Vec<f64>,
    pub integrals: Vec<f64>,
    /// `I_{i+1} / I_i` for consecutive radii.
    pub ratios: Vec<f64>,
}

/// `{rho, 2 rho, 4 rho, 8 rho}`.
pub fn default_radii(rho: f64) -> Vec<f64> {
    (0..4).map(|i| rho * f64::from(1 << i)).collect()
}

/// Decides numerically whether `x` is supported in `N`.
///
/// A term `x_k z^{-k}` with `k < 0` makes the integral over `S_mu` grow like
/// `mu^{2|k|}`, while terms with `k >= 0` do not grow. The sequence is
/// reported as not positive if some consecutive pair of radii shows growth
/// `I_{i+1} / I_i > (mu_{i+1} / mu_i)^2 - 0.1`. Finitely many radii can only
/// give a heuristic answer, so the literal support of the window is
/// reported alongside.
pub fn positive_support_test(
    x: &WeightedSequence,
    rho: f64,
    radii: &[f64],
    m: usize,
) -> Result<SupportReport> {
    check_rho(rho)?;
    check_samples(m)?;
    if radii.is_empty() {
        return Err(FracError::domain(
            "positive-support test needs at least one radius",
        ));
    }
    if radii.iter().any(|&r| !(r.is_finite() && r >= rho)) || radii.windows(2).any(|p| p[1] <= p[0])
    {
        return Err(FracError::domain(
            "radii must be increasing and at least rho",
        ));
    }
    let integrals = radii
        .iter()
        .map(|&mu| hardy_integral(x, mu, m))
        .collect::<Result<Vec<_>>>()?;
    let ratios: Vec<f64> = integrals.windows(2).map(|p| p[1] / p[0]).collect();
    let grows = ratios
        .iter()
        .zip(radii.windows(2))
        .any(|(&q, r)| q > (r[1] / r[0]).powi(2) - GROWTH_SLACK);
    let verdict = if grows {
        Support::NotPositive
    } else {
        Support::Positive
    };
    let literal = match x.first_nonzero() {
        Some(k) if k < 0 => Support::NotPositive,
        _ => Support::Positive,
    };
    Ok(SupportReport {
        verdict,
        literal,
        agrees: verdict == literal,
        radii: radii.to_vec(),
        integrals,
        ratios,
    })
}
