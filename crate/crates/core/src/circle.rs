//! Equally spaced sample points on circles `S_rho`.

use std::f64::consts::PI;

use num_complex::Complex64;

/// Angle of sample `j` out of `m`.
#[inline]
pub fn theta(j: usize, m: usize) -> f64 {
    2.0 * PI * j as f64 / m as f64
}

/// `exp(2 pi i j / m)` for any integer `j`. Quarter turns are exact.
pub fn unit_root(j: i64, m: usize) -> Complex64 {
    let m_i = m as i64;
    let j = j.rem_euclid(m_i);
    if (4 * j) % m_i == 0 {
        return match 4 * j / m_i {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    let (s, c) = (2.0 * PI * j as f64 / m as f64).sin_cos();
    Complex64::new(c, s)
}

/// Table of `exp(2 pi i j / m)` for `j = 0..m`.
pub fn root_table(m: usize) -> Vec<Complex64> {
    (0..m as i64).map(|j| unit_root(j, m)).collect()
}

/// `z_j = rho exp(2 pi i j / m)`.
pub fn circle_points(rho: f64, m: usize) -> Vec<Complex64> {
    root_table(m).into_iter().map(|w| w * rho).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quarter_turns_are_exact() {
        assert_eq!(unit_root(0, 8), Complex64::new(1.0, 0.0));
        assert_eq!(unit_root(4, 8), Complex64::new(-1.0, 0.0));
        assert_eq!(unit_root(-2, 8), Complex64::new(0.0, -1.0));
        assert_eq!(unit_root(10, 8), Complex64::new(0.0, 1.0));
        let w = unit_root(1, 8);
        assert!((w.re - w.im).abs() < 1e-15);
        assert!((w.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn points_lie_on_the_circle() {
        for z in circle_points(1.7, 33) {
            assert!((z.norm() - 1.7).abs() < 1e-14);
        }
    }
}
