//! Solving `tau (1 - tau^-1)^alpha u = A u + delta_{-1} x` in its three forms,
//! checking the residual, and a nonlinear right-hand side.
//!
//! ```bash
//! cargo run --example solve
//! ```

use num_complex::Complex64;

use fracseq::solver::{decay_onset, residual, solve, solve_gl, IvpKind, IvpSpec, RightHandSide};
use fracseq::stability::OperatorMatrix;

fn max_residual(spec: &IvpSpec) -> fracseq::error::Result<f64> {
    let u = solve(spec)?;
    let r = residual(spec, &u)?;
    Ok(r.raw().iter().map(|z| z.norm()).fold(0.0, f64::max))
}

fn main() -> fracseq::error::Result<()> {
    let alpha = 0.5;
    let lambda = Complex64::new(-1.0, 0.0);
    let one = Complex64::new(1.0, 0.0);

    for kind in [IvpKind::RiemannLiouville, IvpKind::Caputo] {
        let spec = IvpSpec::scalar(kind, alpha, lambda, one, 4096)?;
        let u = solve(&spec)?;
        println!(
            "{kind:>6}: u_1={:+.6} u_4096={:.3e} decreasing from n={:?} residual={:.1e}",
            u.component(1, 0).re,
            u.norm_at(4096),
            decay_onset(&u),
            max_residual(&spec)?
        );
    }

    // GL with step h: the RL recursion with h^alpha A
    let spec =
        IvpSpec::scalar(IvpKind::GrunwaldLetnikov, alpha, lambda, one, 400)?.with_step(0.01)?;
    let grid = solve_gl(&spec)?;
    println!(
        "    gl: u(t={}) = {:+.6}",
        grid.time(400),
        grid.seq.component(400, 0).re
    );

    // a rotation-like 2x2 system
    let a = OperatorMatrix::from_rows(&[
        vec![Complex64::new(-0.5, 0.0), Complex64::new(0.4, 0.0)],
        vec![Complex64::new(-0.4, 0.0), Complex64::new(-0.5, 0.0)],
    ])?;
    let spec = IvpSpec::new(
        IvpKind::Caputo,
        0.7,
        vec![one, Complex64::new(0.0, 0.0)],
        RightHandSide::Linear(a),
        200,
    )?;
    let u = solve(&spec)?;
    println!(
        "2x2 Caputo: |u_200| = {:.4e}, residual {:.1e}",
        u.norm_at(200),
        max_residual(&spec)?
    );

    // logistic-type nonlinearity f(u) = u (1 - u)
    let spec = IvpSpec::new(
        IvpKind::Caputo,
        0.8,
        vec![Complex64::new(0.1, 0.0)],
        RightHandSide::pointwise(|u| u.iter().map(|z| z * (1.0 - z) * 0.2).collect()),
        300,
    )?;
    let u = solve(&spec)?;
    println!(
        "logistic: u_300 = {:.6}, residual {:.1e}",
        u.component(300, 0).re,
        max_residual(&spec)?
    );

    println!(
        "{}",
        IvpSpec::scalar(IvpKind::RiemannLiouville, alpha, lambda, one, 16)?.to_json()?
    );
    Ok(())
}
