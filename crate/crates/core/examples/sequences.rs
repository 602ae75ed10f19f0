//! Weighted sequences on `Z`: norms, shifts, convolution and CSV I/O.

use num_complex::Complex64;

use fracseq::binomial::make_kernel;
use fracseq::sequence::{chi_geq, convolve, delta, Norm, WeightedSequence};

fn main() -> fracseq::error::Result<()> {
    let rho = 2.0;
    let x = WeightedSequence::from_real(-2, rho, &[1.0, 0.5, -1.0, 0.25])?;
    for p in [Norm::L1, Norm::L2, Norm::Inf] {
        println!("{p:?} norm: {}", x.weighted_norm(p));
    }
    // one shift multiplies every weighted norm by rho
    println!(
        "|tau x| / |x| = {}",
        x.shift(1).weighted_norm(Norm::L2) / x.weighted_norm(Norm::L2)
    );

    let one = [Complex64::new(1.0, 0.0)];
    let step = chi_geq(0, &one, rho, 7)?;
    let diff = convolve(&make_kernel(1.0, 1)?, &step);
    println!(
        "(1 - tau^-1) applied to a step: {:?}",
        diff.window(0, 8)
            .raw()
            .iter()
            .map(|c| c.re)
            .collect::<Vec<_>>()
    );

    let impulse = delta(
        3,
        &[Complex64::new(0.0, 2.0), Complex64::new(1.0, 0.0)],
        rho,
    )?;
    println!(
        "impulse first nonzero index: {:?}, dim {}",
        impulse.first_nonzero(),
        impulse.dim()
    );

    let mut buf = Vec::new();
    x.write_csv(&mut buf)?;
    print!("{}", String::from_utf8_lossy(&buf));
    assert_eq!(WeightedSequence::read_csv(&buf[..])?, x);
    Ok(())
}
