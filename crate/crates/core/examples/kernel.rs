//! Binomial-series kernels `c_k = (-1)^k C(alpha, k)` and their identities.
//!
//! ```bash
//! cargo run --example kernel
//! ```

use fracseq::binomial::{binom, falling_factorial_gamma, make_kernel, partial_sum};

fn main() -> fracseq::error::Result<()> {
    let alpha = 0.5;
    let kernel = make_kernel(alpha, 8)?;
    println!("(1 - z^-1)^{alpha} = sum c_k z^-k");
    for (k, c) in kernel.coeffs().iter().enumerate() {
        // the same coefficient via C(-alpha + k - 1, k)
        let reflected = binom(-alpha + k as f64 - 1.0, k)?;
        println!("  k={k}  c_k={c:+.6}  reflected={reflected:+.6}");
    }

    let sum_kernel = make_kernel(-alpha, 5)?;
    println!(
        "fractional sum kernel (alpha=-{alpha}): {:?}",
        sum_kernel.coeffs()
    );

    for n in [1, 10, 100, 1000] {
        let closed = if n % 2 == 0 { 1.0 } else { -1.0 } * binom(alpha - 1.0, n)?;
        println!(
            "partial sum to n={n}: {:.12e} (closed form {closed:.12e})",
            partial_sum(alpha, n)?
        );
    }

    println!(
        "x^(m) with x=2.5, m=0.5: {}",
        falling_factorial_gamma(2.5, 0.5)?
    );
    Ok(())
}
