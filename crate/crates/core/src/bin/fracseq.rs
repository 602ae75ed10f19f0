use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use fracseq::binomial::make_kernel;
use fracseq::error::{FracError, Result};
use fracseq::io::{fmt_f64, parse_f64};
use fracseq::sequence::WeightedSequence;
use fracseq::solver::{decay_onset, solve, IvpKind, IvpSpec};
use fracseq::stability::{
    causal_radius, invertibility_check, matignon_check_with_tol, spectral_radius, spectrum,
    symbol_curve, OperatorMatrix, DEFAULT_BOUNDARY_TOL, DEFAULT_CURVE_SAMPLES, DEFAULT_CURVE_TOL,
};
use fracseq::ztransform::{
    default_radii, inverse_ztransform, parseval_check, positive_support_test, ztransform,
    TransformSamples,
};

/// Fractional difference equations on weighted sequence spaces.
#[derive(Parser)]
#[command(name = "fracseq", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an initial value problem given as JSON and write the solution CSV.
    Solve {
        /// Problem file: {"kind","alpha","x0","A","steps","h"}.
        spec: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Override the order from the file.
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long)]
        h: Option<f64>,
    },
    /// Stability verdict for a scalar eigenvalue or every eigenvalue of a matrix.
    Stability {
        #[arg(long)]
        alpha: f64,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "matrix")]
        lambda_re: Option<f64>,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        lambda_im: f64,
        /// JSON matrix `[[[re, im], ...], ...]`.
        #[arg(long)]
        matrix: Option<PathBuf>,
        /// Also test invertibility on the circle of this radius.
        #[arg(long)]
        rho: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_CURVE_SAMPLES)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample the symbol curve f(S_rho).
    Curve {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        rho: f64,
        #[arg(long, default_value_t = DEFAULT_CURVE_SAMPLES)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Z-transform tools on sequence or sample CSV files.
    Transform {
        /// Sequence CSV (forward, parseval, support) or sample CSV (inverse).
        input: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Circle radius; defaults to the weight stored in the file.
        #[arg(long)]
        rho: Option<f64>,
        #[arg(long, default_value_t = 4096)]
        samples: usize,
        /// First index of the recovered window (inverse mode).
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        start: i64,
        /// Length of the recovered window (inverse mode).
        #[arg(long)]
        len: Option<usize>,
        /// Comma-separated radii for the support test.
        #[arg(long, value_delimiter = ',')]
        radii: Option<Vec<f64>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dump the coefficients (-1)^k C(alpha, k), k = 0..=steps.
    Kernel {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, default_value_t = 16)]
        steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Forward,
    Inverse,
    Parseval,
    Support,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("fracseq: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &FracError) -> u8 {
    match err {
        e if e.is_domain() => 3,
        FracError::Io(_) => 1,
        _ => 2,
    }
}

fn tolerance(default: f64) -> Result<f64> {
    match std::env::var("FRACSEQ_TOL") {
        Ok(text) => {
            let tol = parse_f64(&text)?;
            if tol.is_finite() && tol > 0.0 {
                Ok(tol)
            } else {
                Err(FracError::Parse(format!(
                    "FRACSEQ_TOL must be positive, got {text}"
                )))
            }
        }
        Err(_) => Ok(default),
    }
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_json(path: Option<&Path>, value: &serde_json::Value) -> Result<()> {
    let mut w = output(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Solve {
            spec,
            out,
            alpha,
            steps,
            h,
        } => cmd_solve(&spec, &out, alpha, steps, h),
        Command::Stability {
            alpha,
            lambda_re,
            lambda_im,
            matrix,
            rho,
            samples,
            out,
        } => cmd_stability(
            alpha,
            lambda_re,
            lambda_im,
            matrix.as_deref(),
            rho,
            samples,
            out.as_deref(),
        ),
        Command::Curve {
            alpha,
            rho,
            samples,
            out,
        } => {
            let curve = symbol_curve(rho, alpha, samples)?;
            let mut w = output(out.as_deref())?;
            curve.write_csv(&mut w)?;
            w.flush()?;
            Ok(())
        }
        Command::Transform {
            input,
            mode,
            rho,
            samples,
            start,
            len,
            radii,
            out,
        } => cmd_transform(
            &input,
            mode,
            rho,
            samples,
            start,
            len,
            radii,
            out.as_deref(),
        ),
        Command::Kernel { alpha, steps, out } => {
            let kernel = make_kernel(alpha, steps)?;
            let mut w = output(out.as_deref())?;
            writeln!(w, "k,c_k")?;
            for (k, c) in kernel.coeffs().iter().enumerate() {
                writeln!(w, "{k},{}", fmt_f64(*c))?;
            }
            w.flush()?;
            Ok(())
        }
    }
}

fn cmd_solve(
    path: &Path,
    out: &Path,
    alpha: Option<f64>,
    steps: Option<usize>,
    h: Option<f64>,
) -> Result<()> {
    let text = std::fs::read_to_string(path)?;
    let mut spec = IvpSpec::from_json(&text)?;
    if let Some(a) = alpha {
        spec.alpha = fracseq::binomial::FracOrder::new(a)?;
    }
    if let Some(n) = steps {
        spec.steps = n;
    }
    if let Some(h) = h {
        spec.h = h;
    }
    spec.validate()?;
    let u = solve(&spec)?;

    let mut w = BufWriter::new(File::create(out)?);
    if spec.kind == IvpKind::GrunwaldLetnikov {
        write_grid_csv(&mut w, &u, spec.h)?;
    } else {
        u.write_csv(&mut w)?;
    }
    w.flush()?;

    let onset = decay_onset(&u);
    let summary = json!({
        "kind": spec.kind,
        "alpha": spec.alpha.value(),
        "steps": spec.steps,
        "terminal_norm": u.norm_at(u.end() - 1),
        "decay_onset": onset,
        "monotone_tail": onset.is_some_and(|n| n <= spec.steps as i64 / 2),
    });
    println!("{summary}");
    Ok(())
}

/// Same layout as the sequence CSV with the index column replaced by `t = n h`.
fn write_grid_csv<W: Write>(w: &mut W, u: &WeightedSequence, h: f64) -> Result<()> {
    let mut buf = Vec::new();
    u.write_csv(&mut buf)?;
    let text = String::from_utf8(buf).map_err(|e| FracError::Invalid(e.to_string()))?;
    let mut lines = text.lines();
    writeln!(w, "{}", lines.next().unwrap_or_default())?;
    if let Some(header) = lines.next() {
        let rest = header.split_once(',').map_or("", |(_, r)| r);
        writeln!(w, "t,{rest}")?;
    }
    for line in lines {
        let (n, rest) = line.split_once(',').unwrap_or((line, ""));
        let n: i64 = n
            .parse()
            .map_err(|_| FracError::Invalid(format!("bad index {n}")))?;
        writeln!(w, "{},{rest}", fmt_f64(n as f64 * h))?;
    }
    Ok(())
}

fn cmd_stability(
    alpha: f64,
    lambda_re: Option<f64>,
    lambda_im: f64,
    matrix: Option<&Path>,
    rho: Option<f64>,
    samples: usize,
    out: Option<&Path>,
) -> Result<()> {
    let boundary_tol = tolerance(DEFAULT_BOUNDARY_TOL)?;
    let a = match (lambda_re, matrix) {
        (Some(re), None) => OperatorMatrix::scalar(Complex64::new(re, lambda_im)),
        (None, Some(path)) => {
            let rows: Vec<Vec<[f64; 2]>> = serde_json::from_str(&std::fs::read_to_string(path)?)?;
            OperatorMatrix::from_pairs(&rows)?
        }
        _ => {
            return Err(FracError::Parse(
                "give either --lambda-re or --matrix".into(),
            ))
        }
    };
    let eigenvalues = spectrum(&a)?;
    let verdicts = eigenvalues
        .iter()
        .map(|&l| matignon_check_with_tol(l, alpha, boundary_tol))
        .collect::<Result<Vec<_>>>()?;

    let value = if matrix.is_none() {
        serde_json::to_value(verdicts[0])?
    } else {
        let mut v = json!({
            "spectral_radius": spectral_radius(&a)?,
            "causal_radius": causal_radius(&a, alpha)?,
            "eigenvalues": verdicts,
        });
        if let Some(rho) = rho {
            let curve_tol = tolerance(DEFAULT_CURVE_TOL)?;
            v["invertibility"] =
                serde_json::to_value(invertibility_check(&a, rho, alpha, samples, curve_tol)?)?;
        }
        v
    };
    write_json(out, &value)
}

#[allow(clippy::too_many_arguments)]
fn cmd_transform(
    input: &Path,
    mode: Mode,
    rho: Option<f64>,
    samples: usize,
    start: i64,
    len: Option<usize>,
    radii: Option<Vec<f64>>,
    out: Option<&Path>,
) -> Result<()> {
    let file = File::open(input)?;
    if let Mode::Inverse = mode {
        let s = TransformSamples::read_csv(file)?;
        let len = len.unwrap_or(s.len());
        let x = inverse_ztransform(&s, start, len)?;
        let mut w = output(out)?;
        x.write_csv(&mut w)?;
        w.flush()?;
        return Ok(());
    }
    let x = WeightedSequence::read_csv(file)?;
    let rho = rho.unwrap_or(x.rho());
    match mode {
        Mode::Forward => {
            let s = ztransform(&x, rho, samples)?;
            let mut w = output(out)?;
            s.write_csv(&mut w)?;
            w.flush()?;
            Ok(())
        }
        Mode::Parseval => {
            let err = parseval_check(&x, rho, samples)?;
            write_json(
                out,
                &json!({ "rho": rho, "samples": samples, "relative_error": err }),
            )
        }
        Mode::Support => {
            let radii = radii.unwrap_or_else(|| default_radii(rho));
            let report = positive_support_test(&x, rho, &radii, samples)?;
            write_json(out, &serde_json::to_value(report)?)
        }
        Mode::Inverse => unreachable!(),
    }
}
