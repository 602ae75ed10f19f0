//! Writes `f(S_rho)` for a few radii as CSV files for plotting.

use std::fs::File;

use fracseq::stability::{binom_estimate_margin, symbol_curve};

fn main() -> fracseq::error::Result<()> {
    let alpha = 0.5;
    let dir = std::env::temp_dir();
    for rho in [1.01, 1.5, 3.0] {
        let curve = symbol_curve(rho, alpha, 1024)?;
        let path = dir.join(format!("symbol_curve_rho{rho}.csv"));
        curve.write_csv(File::create(&path)?)?;
        let (_, right) = curve.samples[0];
        let (_, left) = curve.samples[512];
        println!(
            "rho={rho}: crosses the real axis at {:.6} and {:.6}, margin {:.1e} -> {}",
            left.re,
            right.re,
            binom_estimate_margin(rho, alpha, 1024)?,
            path.display()
        );
    }
    Ok(())
}
