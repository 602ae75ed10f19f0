//! Detecting negative-index entries from the growth of `int_{S_mu} |Zx|^2`.

use fracseq::sequence::WeightedSequence;
use fracseq::ztransform::{default_radii, positive_support_test};

fn main() -> fracseq::error::Result<()> {
    let rho = 2.0;
    let cases = [
        ("delta_0", WeightedSequence::from_real(0, rho, &[1.0])?),
        ("delta_-1", WeightedSequence::from_real(-1, rho, &[1.0])?),
        (
            "ramp on N",
            WeightedSequence::from_real(0, rho, &[0.5, 1.0, 1.5, 2.0])?,
        ),
        (
            "x_-2 = 0.4",
            WeightedSequence::from_real(-2, rho, &[0.4, 0.0, 1.0, -1.0])?,
        ),
    ];
    for (name, x) in cases {
        let rep = positive_support_test(&x, rho, &default_radii(rho), 64)?;
        let ratios: Vec<String> = rep.ratios.iter().map(|q| format!("{q:.3}")).collect();
        println!(
            "{name:>10}: {:?} (window says {:?}), ratios [{}]",
            rep.verdict,
            rep.literal,
            ratios.join(", ")
        );
    }
    Ok(())
}
