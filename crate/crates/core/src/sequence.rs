//! Finitely supported vector-valued sequences on `Z` living in the
//! exponentially weighted spaces `l_{p,rho}(Z; C^d)`.
//!
//! A [`WeightedSequence`] stores a dense window `start..start+len` of
//! `C^d` vectors; every index outside the window reads as zero. The weight
//! `rho` is carried along and used by norms and transforms. Combining two
//! sequences with different weights is an error.
//!
//! A sequence given on `N` is simply a window with `start = 0`, which is the
//! same thing as its zero extension to `Z`.

use std::io::{BufReader, Read, Write};

use num_complex::Complex64;

use crate::binomial::ConvolutionKernel;
use crate::error::{FracError, Result};
use crate::io::{component_header, fmt_f64, metadata_value, parse_f64, read_metadata};

/// Which weighted norm to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Norm {
    L1,
    L2,
    Inf,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedSequence {
    start: i64,
    dim: usize,
    rho: f64,
    values: Vec<Complex64>,
}

fn check_rho(rho: f64) -> Result<()> {
    if rho.is_finite() && rho > 0.0 {
        Ok(())
    } else {
        Err(FracError::domain(format!(
            "weight must be positive and finite, got {rho}"
        )))
    }
}

/// Euclidean norm, without overflow for entries beyond `1e154`.
pub(crate) fn vector_norm(v: &[Complex64]) -> f64 {
    v.iter().fold(0.0, |acc, c| acc.hypot(c.norm()))
}

impl WeightedSequence {
    /// `values` holds `len * dim` entries, index-major.
    pub fn new(start: i64, dim: usize, rho: f64, values: Vec<Complex64>) -> Result<Self> {
        check_rho(rho)?;
        if dim == 0 {
            return Err(FracError::Invalid(
                "state dimension must be at least 1".into(),
            ));
        }
        if !values.len().is_multiple_of(dim) {
            return Err(FracError::DimensionMismatch {
                expected: dim,
                found: values.len() % dim,
            });
        }
        Ok(WeightedSequence {
            start,
            dim,
            rho,
            values,
        })
    }

    pub fn zeros(start: i64, len: usize, dim: usize, rho: f64) -> Result<Self> {
        Self::new(start, dim, rho, vec![Complex64::new(0.0, 0.0); len * dim])
    }

    pub fn from_vectors(start: i64, rho: f64, vectors: &[Vec<Complex64>]) -> Result<Self> {
        let dim = vectors.first().map_or(1, Vec::len);
        let mut values = Vec::with_capacity(vectors.len() * dim);
        for v in vectors {
            if v.len() != dim {
                return Err(FracError::DimensionMismatch {
                    expected: dim,
                    found: v.len(),
                });
            }
            values.extend_from_slice(v);
        }
        Self::new(start, dim, rho, values)
    }

    /// Scalar real sequence.
    pub fn from_real(start: i64, rho: f64, values: &[f64]) -> Result<Self> {
        let values = values.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::new(start, 1, rho, values)
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    /// Number of stored indices.
    pub fn len(&self) -> usize {
        self.values.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// One past the last stored index.
    pub fn end(&self) -> i64 {
        self.start + self.len() as i64
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn raw(&self) -> &[Complex64] {
        &self.values
    }

    /// The vector at index `k`, or `None` outside the stored window.
    pub fn get(&self, k: i64) -> Option<&[Complex64]> {
        if k < self.start || k >= self.end() {
            return None;
        }
        let i = (k - self.start) as usize * self.dim;
        Some(&self.values[i..i + self.dim])
    }

    /// Component `i` of the vector at index `k`; zero outside the window.
    pub fn component(&self, k: i64, i: usize) -> Complex64 {
        self.get(k).map_or(Complex64::new(0.0, 0.0), |v| v[i])
    }

    pub fn get_mut(&mut self, k: i64) -> Option<&mut [Complex64]> {
        if k < self.start || k >= self.end() {
            return None;
        }
        let i = (k - self.start) as usize * self.dim;
        Some(&mut self.values[i..i + self.dim])
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &[Complex64])> + '_ {
        self.values
            .chunks_exact(self.dim)
            .enumerate()
            .map(move |(i, v)| (self.start + i as i64, v))
    }

    /// Euclidean norm of the vector at `k`.
    pub fn norm_at(&self, k: i64) -> f64 {
        self.get(k).map_or(0.0, vector_norm)
    }

    /// Same data tagged with a different weight.
    pub fn with_rho(mut self, rho: f64) -> Result<Self> {
        check_rho(rho)?;
        self.rho = rho;
        Ok(self)
    }

    /// Smallest index carrying a nonzero vector.
    pub fn first_nonzero(&self) -> Option<i64> {
        self.iter()
            .find(|(_, v)| v.iter().any(|c| *c != Complex64::new(0.0, 0.0)))
            .map(|(k, _)| k)
    }

    /// Copy of the window `start..start+len`, zero-filled where `self` has no data.
    pub fn window(&self, start: i64, len: usize) -> WeightedSequence {
        let mut out = WeightedSequence {
            start,
            dim: self.dim,
            rho: self.rho,
            values: vec![Complex64::new(0.0, 0.0); len * self.dim],
        };
        for k in start.max(self.start)..(start + len as i64).min(self.end()) {
            out.get_mut(k)
                .unwrap()
                .copy_from_slice(self.get(k).unwrap());
        }
        out
    }

    /// `(sum_k ||x_k||^p rho^{-pk})^{1/p}`, or `sup_k ||x_k|| rho^{-k}`.
    pub fn weighted_norm(&self, p: Norm) -> f64 {
        let weighted = self
            .iter()
            .map(|(k, v)| vector_norm(v) * weight(self.rho, k));
        match p {
            Norm::L1 => weighted.sum(),
            Norm::L2 => weighted.map(|w| w * w).sum::<f64>().sqrt(),
            Norm::Inf => weighted.fold(0.0, f64::max),
        }
    }

    /// `(tau^n x)_k = x_{k+n}`.
    pub fn shift(&self, n: i64) -> WeightedSequence {
        WeightedSequence {
            start: self.start - n,
            ..self.clone()
        }
    }

    pub fn scale(&self, factor: Complex64) -> WeightedSequence {
        WeightedSequence {
            values: self.values.iter().map(|c| c * factor).collect(),
            ..self.clone()
        }
    }

    /// Applies `f` to the vector at every stored index.
    pub fn map_vectors<F>(&self, mut f: F) -> Result<WeightedSequence>
    where
        F: FnMut(&[Complex64]) -> Vec<Complex64>,
    {
        let mut values = Vec::with_capacity(self.values.len());
        for (_, v) in self.iter() {
            let w = f(v);
            if w.len() != self.dim {
                return Err(FracError::DimensionMismatch {
                    expected: self.dim,
                    found: w.len(),
                });
            }
            values.extend(w);
        }
        Ok(WeightedSequence {
            values,
            ..self.clone()
        })
    }

    fn check_compatible(&self, other: &WeightedSequence) -> Result<()> {
        if self.rho != other.rho {
            return Err(FracError::WeightMismatch {
                left: self.rho,
                right: other.rho,
            });
        }
        if self.dim != other.dim {
            return Err(FracError::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    fn combine(&self, other: &WeightedSequence, sign: f64) -> Result<WeightedSequence> {
        self.check_compatible(other)?;
        if self.is_empty() {
            return Ok(other.scale(Complex64::new(sign, 0.0)));
        }
        if other.is_empty() {
            return Ok(self.clone());
        }
        let start = self.start.min(other.start);
        let end = self.end().max(other.end());
        let mut out = self.window(start, (end - start) as usize);
        for (k, v) in other.iter() {
            for (o, x) in out.get_mut(k).unwrap().iter_mut().zip(v) {
                *o += x * sign;
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &WeightedSequence) -> Result<WeightedSequence> {
        self.combine(other, 1.0)
    }

    pub fn sub(&self, other: &WeightedSequence) -> Result<WeightedSequence> {
        self.combine(other, -1.0)
    }

    /// Largest componentwise modulus of `self - other` over the union of windows.
    pub fn max_abs_diff(&self, other: &WeightedSequence) -> Result<f64> {
        let diff = self.sub(other)?;
        Ok(diff.values.iter().map(|c| c.norm()).fold(0.0, f64::max))
    }

    /// Writes `# rho=..,dim=..` followed by `index,re_0,im_0,...` rows.
    pub fn write_csv<W: Write>(&self, mut writer: W) -> Result<()> {
        writeln!(writer, "# rho={},dim={}", fmt_f64(self.rho), self.dim)?;
        let mut csv = csv::Writer::from_writer(writer);
        csv.write_record(component_header("index", self.dim))?;
        for (k, v) in self.iter() {
            let mut row = vec![k.to_string()];
            for c in v {
                row.push(fmt_f64(c.re));
                row.push(fmt_f64(c.im));
            }
            csv.write_record(&row)?;
        }
        csv.flush()?;
        Ok(())
    }

    /// Reads the format produced by [`write_csv`](Self::write_csv). Rows must
    /// have consecutive indices.
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
        let mut start = None;
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
            let k: i64 = record[0].parse().map_err(|_| {
                FracError::Parse(format!("row {row_no}: bad index {:?}", &record[0]))
            })?;
            let first = *start.get_or_insert(k);
            if k != first + row_no as i64 {
                return Err(FracError::Parse(format!(
                    "row {row_no}: indices must be consecutive"
                )));
            }
            for i in 0..dim {
                values.push(Complex64::new(
                    parse_f64(&record[1 + 2 * i])?,
                    parse_f64(&record[2 + 2 * i])?,
                ));
            }
        }
        Self::new(start.unwrap_or(0), dim, rho, values)
    }
}

/// `rho^{-k}`.
#[inline]
pub(crate) fn weight(rho: f64, k: i64) -> f64 {
    let k = k.clamp(i32::MIN as i64 + 1, i32::MAX as i64) as i32;
    rho.powi(-k)
}

/// `delta_n v`: `v` at index `n`, zero elsewhere.
pub fn delta(n: i64, v: &[Complex64], rho: f64) -> Result<WeightedSequence> {
    WeightedSequence::new(n, v.len(), rho, v.to_vec())
}

/// `chi_{Z>=n} v` stored on `n..=n+horizon`. Beyond the horizon the stored
/// window is a truncation, not the true support. Membership in
/// `l_{p,rho}` needs `rho > 1`.
pub fn chi_geq(n: i64, v: &[Complex64], rho: f64, horizon: i64) -> Result<WeightedSequence> {
    if horizon < 0 {
        return Err(FracError::domain(format!(
            "horizon must be nonnegative, got {horizon}"
        )));
    }
    let len = horizon as usize + 1;
    let values = v.iter().copied().cycle().take(len * v.len()).collect();
    WeightedSequence::new(n, v.len(), rho, values)
}

/// Full causal convolution `(c * u)_n = sum_k c_k u_{n-k}`.
///
/// The output window starts at `u.start()` and holds `u.len() + N` indices.
/// Against the untruncated kernel it is exact for `n - u.start() <= N`.
pub fn convolve(kernel: &ConvolutionKernel, u: &WeightedSequence) -> WeightedSequence {
    convolve_window(kernel, u, u.start, u.len() + kernel.truncation())
}

/// `c * u` evaluated only on `out_start..out_start+out_len`.
pub fn convolve_window(
    kernel: &ConvolutionKernel,
    u: &WeightedSequence,
    out_start: i64,
    out_len: usize,
) -> WeightedSequence {
    let c = kernel.coeffs();
    let dim = u.dim;
    let mut out = vec![Complex64::new(0.0, 0.0); out_len * dim];
    for (slot, n) in (out_start..out_start + out_len as i64).enumerate() {
        let acc = &mut out[slot * dim..(slot + 1) * dim];
        // k ranges where both c_k and u_{n-k} exist
        let k_lo = (n - u.end() + 1).max(0);
        let k_hi = (n - u.start).min(c.len() as i64 - 1);
        for k in k_lo..=k_hi {
            let v = u.get(n - k).unwrap();
            let ck = c[k as usize];
            for (a, x) in acc.iter_mut().zip(v) {
                *a += x * ck;
            }
        }
    }
    WeightedSequence {
        start: out_start,
        dim,
        rho: u.rho,
        values: out,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binomial::{make_kernel, FracOrder};

    fn e(d: usize) -> Vec<Complex64> {
        let mut v = vec![Complex64::new(0.0, 0.0); d];
        v[0] = Complex64::new(1.0, 0.0);
        v
    }

    #[test]
    fn norm_examples() {
        let x = delta(0, &e(2), 3.0).unwrap();
        assert_eq!(x.weighted_norm(Norm::L2), 1.0);
        let y = delta(-1, &e(1), 2.0).unwrap();
        assert_eq!(y.weighted_norm(Norm::L2), 2.0);
        let k = 30;
        let step = chi_geq(0, &e(1), 2.0, k).unwrap();
        let expect = 2.0 - 2f64.powi(-(k as i32));
        assert!((step.weighted_norm(Norm::L1) - expect).abs() < 1e-15);
        assert_eq!(step.weighted_norm(Norm::Inf), 1.0);
    }

    #[test]
    fn shift_bookkeeping() {
        let x = delta(0, &e(1), 2.0).unwrap();
        let s = x.shift(1);
        assert_eq!(s, delta(-1, &e(1), 2.0).unwrap());
        let y = chi_geq(2, &[Complex64::new(1.0, 2.0)], 1.5, 7).unwrap();
        assert_eq!(y.shift(3).shift(-3), y);
    }

    #[test]
    fn delta_and_chi_constructors() {
        let d = delta(0, &e(1), 2.0).unwrap();
        assert_eq!(d.first_nonzero(), Some(0));
        assert_eq!(d.len(), 1);
        let z = delta(4, &[Complex64::new(0.0, 0.0)], 2.0).unwrap();
        assert_eq!(z.first_nonzero(), None);
        assert_eq!(z.weighted_norm(Norm::L2), 0.0);

        let c = chi_geq(-1, &e(2), 2.0, 3).unwrap();
        assert_eq!(c.start(), -1);
        assert_eq!(c.len(), 4);
        assert_eq!(c.component(-2, 0), Complex64::new(0.0, 0.0));
        assert_eq!(c.component(2, 0), Complex64::new(1.0, 0.0));
        let c0 = chi_geq(0, &[Complex64::new(0.0, 0.0)], 2.0, 3).unwrap();
        assert_eq!(c0.first_nonzero(), None);
        assert!(chi_geq(0, &e(1), 2.0, -1).is_err());
    }

    #[test]
    fn convolve_examples() {
        let id = make_kernel(0.0, 0).unwrap();
        let u = WeightedSequence::from_real(3, 2.0, &[1.0, -2.0, 5.0]).unwrap();
        assert_eq!(convolve(&id, &u), u);

        let diff = make_kernel(1.0, 1).unwrap();
        let imp = delta(0, &e(1), 2.0).unwrap();
        let out = convolve(&diff, &imp);
        assert_eq!(
            out,
            WeightedSequence::from_real(0, 2.0, &[1.0, -1.0]).unwrap()
        );
    }

    #[test]
    fn convolution_window_restriction() {
        let k = make_kernel(0.5, 10).unwrap();
        let u = WeightedSequence::from_real(-2, 1.5, &[1.0, 0.5, -0.25, 2.0]).unwrap();
        let full = convolve(&k, &u);
        let part = convolve_window(&k, &u, 0, 5);
        assert_eq!(part, full.window(0, 5));
        // before the support of u
        let before = convolve_window(&k, &u, -6, 4);
        assert!(before.raw().iter().all(|c| c.norm() == 0.0));
    }

    #[test]
    fn add_requires_matching_weight() {
        let a = delta(0, &e(1), 2.0).unwrap();
        let b = delta(0, &e(1), 3.0).unwrap();
        assert!(matches!(a.add(&b), Err(FracError::WeightMismatch { .. })));
        let c = delta(0, &e(2), 2.0).unwrap();
        assert!(matches!(
            a.add(&c),
            Err(FracError::DimensionMismatch { .. })
        ));
        let d = delta(3, &e(1), 2.0).unwrap();
        let s = a.sub(&d).unwrap();
        assert_eq!(s.start(), 0);
        assert_eq!(s.len(), 4);
        assert_eq!(s.component(3, 0), Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn invalid_construction() {
        assert!(WeightedSequence::new(0, 1, 0.0, vec![]).is_err());
        assert!(WeightedSequence::new(0, 1, f64::NAN, vec![]).is_err());
        assert!(WeightedSequence::new(0, 0, 1.0, vec![]).is_err());
        assert!(WeightedSequence::new(0, 2, 1.0, vec![Complex64::new(1.0, 0.0)]).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let x = WeightedSequence::from_vectors(
            -2,
            1.25,
            &[
                vec![Complex64::new(0.1, -0.3), Complex64::new(1.0 / 3.0, 0.0)],
                vec![Complex64::new(-7.5e-12, 2.0), Complex64::new(0.0, 1e200)],
            ],
        )
        .unwrap();
        let mut buf = Vec::new();
        x.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(
            text.starts_with("# rho=1.2500000000000000e0,dim=2\nindex,re_0,im_0,re_1,im_1\n-2,")
        );
        assert_eq!(WeightedSequence::read_csv(&buf[..]).unwrap(), x);
    }

    #[test]
    fn csv_rejects_gaps() {
        let text = "# rho=2,dim=1\nindex,re_0,im_0\n0,1,0\n2,1,0\n";
        assert!(WeightedSequence::read_csv(text.as_bytes()).is_err());
        let short = "# rho=2,dim=1\nindex,re_0,im_0\n0,1\n";
        assert!(WeightedSequence::read_csv(short.as_bytes()).is_err());
    }

    #[test]
    fn kernel_tag_is_kept() {
        let k = make_kernel(0.25, 3).unwrap();
        assert_eq!(k.alpha(), FracOrder::new(0.25).unwrap());
    }
}
