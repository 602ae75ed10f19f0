//! Z-transform on `S_rho`: inversion, Parseval and the shift/multiplication
//! correspondence.

use num_complex::Complex64;

use fracseq::sequence::{Norm, WeightedSequence};
use fracseq::ztransform::{
    inverse_ztransform, multiplication_equivalence_check, parseval_check, ztransform,
};

fn main() -> fracseq::error::Result<()> {
    let rho = 1.5;
    let values: Vec<Complex64> = (0..24)
        .map(|k| Complex64::from_polar(1.0 / (1.0 + k as f64), k as f64))
        .collect();
    let x = WeightedSequence::new(-4, 1, rho, values)?;

    let samples = ztransform(&x, rho, 64)?;
    println!("F(rho) = {:.6}", samples.get(0)[0]);
    let back = inverse_ztransform(&samples, x.start(), x.len())?;
    let err = back.sub(&x)?.weighted_norm(Norm::L2) / x.weighted_norm(Norm::L2);
    println!("round trip relative error: {err:.2e}");

    for m in [16, 32, 48, 64] {
        println!("Parseval with M={m}: {:.2e}", parseval_check(&x, rho, m)?);
    }
    println!(
        "|Z(tau x) - z Z(x)|: {:.2e}",
        multiplication_equivalence_check(&x, rho, 64)?
    );
    Ok(())
}
