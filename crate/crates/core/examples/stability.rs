//! Stability of `tau (1 - tau^-1)^alpha u = lambda u` and of matrix systems.

use num_complex::Complex64;

use fracseq::stability::{
    causal_radius, invertibility_check, matignon_check, spectrum, OperatorMatrix, DEFAULT_CURVE_TOL,
};

fn main() -> fracseq::error::Result<()> {
    let alpha = 0.5;
    println!("stable real eigenvalues: [-{:.6}, 0]", 2f64.powf(alpha));
    for re in [-2.0, -1.5, -2f64.sqrt(), -1.0, -0.2, 0.0, 0.3] {
        let v = matignon_check(Complex64::new(re, 0.0), alpha)?;
        let z = v.witness.and_then(|w| w.z);
        println!(
            "  lambda={re:+.4}: {:?} {}",
            v.classification,
            z.map_or(String::new(), |z| format!("(f({z:.4}) = lambda)"))
        );
    }
    for lambda in [Complex64::new(-0.7, 0.05), Complex64::new(0.2, 1.5)] {
        println!(
            "  lambda={lambda}: {:?}",
            matignon_check(lambda, alpha)?.classification
        );
    }

    let a = OperatorMatrix::from_rows(&[
        vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        vec![Complex64::new(-0.5, 0.0), Complex64::new(-1.0, 0.0)],
    ])?;
    println!("spectrum: {:?}", spectrum(&a)?);
    let rho = causal_radius(&a, alpha)?;
    println!("causal inverse on l_2,mu for mu > {rho:.6}");
    for mu in [rho * 1.01, 1.05] {
        let rep = invertibility_check(&a, mu, alpha, 4096, DEFAULT_CURVE_TOL)?;
        println!(
            "  mu={mu:.4}: invertible={} distance={:.3e}",
            rep.invertible, rep.min_distance
        );
    }
    Ok(())
}
