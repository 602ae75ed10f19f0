//! Fractional sum and the Riemann-Liouville, Caputo and Grünwald-Letnikov
//! differences of the same sequence.

use fracseq::operators::{caputo_delta, frac_power_window, frac_sum, gl_delta, rl_delta};
use fracseq::sequence::WeightedSequence;

fn show(name: &str, x: &WeightedSequence) {
    let vals: Vec<String> = x.raw().iter().map(|c| format!("{:+.4}", c.re)).collect();
    println!("{name:>10}: [{}]", vals.join(", "));
}

fn main() -> fracseq::error::Result<()> {
    let alpha = 0.5;
    let v = WeightedSequence::from_real(0, 2.0, &[1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0])?;
    show("v", &v);
    show("sum", &frac_sum(alpha, &v)?);
    show("RL", &rl_delta(alpha, &v)?);
    // constants are annihilated by the Caputo difference
    show("Caputo", &caputo_delta(alpha, &v)?);
    show("GL h=0.1", &gl_delta(alpha, 0.1, &v)?);

    let round_trip = frac_power_window(-alpha, &frac_power_window(alpha, &v)?)?;
    println!(
        "inverse round trip error: {:.2e}",
        round_trip.max_abs_diff(&v)?
    );
    Ok(())
}
