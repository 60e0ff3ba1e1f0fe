//! The `clark` command line. Every subcommand reads measures in the JSON
//! interchange format and writes JSON or CSV to stdout (or `--output`).
//!
//! Exit codes: 0 on success, 1 on any usage or validation error (with
//! `{"error":{"code":…,"message":…}}` on stderr), 2 when a verification
//! residual exceeds its tolerance.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cauchy::RadialLimitConfig;
use crate::charfn::{rational_theta_gamma, CharFunction};
use crate::clark::{norm_sweep, phi_star_matrix, rigidity_check, v_alpha_matrix, ClarkFamily, ClarkReport, SWEEP_RADII};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::measure::CircleMeasure;
use crate::perturbation::spectral_flow;
use crate::suite::{identity_suite, IDENTITY_TOL};

#[derive(Parser, Debug)]
#[command(name = "clark", version, about = "Clark measures, characteristic functions and Clark operators of rank-one unitary perturbations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate θ_γ at a point, or print its zeros and constant (atomic μ).
    Theta(ThetaArgs),
    /// Clark measures μ_α for α = e^{2πij/k}, j = 0..k, as a JSON array.
    ClarkMeasures(AlphasArgs),
    /// Matrix of Φ*_γ : L²(μ) → K_{θ_γ}, or its verification report.
    ClarkOperator(OperatorArgs),
    /// CSV of eigenvalue angles and masses of U_α over α = e^{2πij/k}.
    SpectralFlow(AlphasArgs),
    /// Matrix of V_α : L²(μ) → L²(μ_α), or its verification report.
    Valpha(ValphaArgs),
    /// Rigidity check of the V_α formula against a measure ν.
    Rigidity(RigidityArgs),
    /// CSV of ‖T_r‖ from L²(μ) to L²(v_γ) over the standard radii.
    NormSweep(SweepArgs),
    /// Pointwise boundary identities on a uniform grid.
    IdentitySuite(SuiteArgs),
}

#[derive(Args, Debug)]
struct Common {
    /// Measure in the JSON interchange format.
    #[arg(long)]
    measure: PathBuf,
    /// Write the result here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[group(id = "mode", required = true, multiple = false, args = ["at", "rational"])]
struct ThetaArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    gamma: String,
    /// Evaluation point `a+bi`.
    #[arg(long, allow_hyphen_values = true)]
    at: Option<String>,
    /// Print zeros and unimodular constant of θ_γ.
    #[arg(long)]
    rational: bool,
}

#[derive(Args, Debug)]
struct AlphasArgs {
    #[command(flatten)]
    common: Common,
    /// Number of equally spaced α on the circle.
    #[arg(long)]
    alphas: usize,
}

#[derive(Args, Debug)]
struct OperatorArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, allow_hyphen_values = true)]
    gamma: String,
    #[arg(long)]
    verify: bool,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

#[derive(Args, Debug)]
struct ValphaArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    #[arg(long)]
    verify: bool,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

#[derive(Args, Debug)]
struct RigidityArgs {
    #[command(flatten)]
    common: Common,
    /// The measure ν of the target space L²(ν).
    #[arg(long)]
    nu: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    gamma: String,
    /// Number of target sample points for v_γ.
    #[arg(long, default_value_t = 512)]
    grid: usize,
    /// Comma-separated radii (default: 0.5,0.7,0.9,0.99,1.01,1.1,1.5,2).
    #[arg(long, value_delimiter = ',')]
    radii: Option<Vec<f64>>,
}

#[derive(Args, Debug)]
struct SuiteArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    gamma: String,
    #[arg(long, default_value_t = 4096)]
    grid: usize,
    #[arg(long, default_value_t = IDENTITY_TOL)]
    tol: f64,
}

enum Outcome {
    Done(String),
    VerifyFailed(String),
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// [`run`] with explicit output streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let detail = e.to_string();
            let body = detail.split("\n\nUsage").next().unwrap_or_default();
            let msg = body.trim_start_matches("error: ").split_whitespace().collect::<Vec<_>>().join(" ");
            let _ = writeln!(err, "{}", error_json("usage", &msg));
            return 1;
        }
    };
    let output = output_path(&cli.command).map(Path::to_path_buf);
    let result = dispatch(cli.command, err);
    let (text, code) = match result {
        Ok(Outcome::Done(t)) => (t, 0),
        Ok(Outcome::VerifyFailed(t)) => (t, 2),
        Err(e) => {
            let _ = writeln!(err, "{}", error_json(e.code(), &e.to_string()));
            return 1;
        }
    };
    match output {
        Some(p) => {
            if let Err(e) = std::fs::write(&p, &text) {
                let _ = writeln!(err, "{}", error_json("io", &e.to_string()));
                return 1;
            }
        }
        None => {
            let _ = out.write_all(text.as_bytes());
        }
    }
    code
}

fn error_json(code: &str, message: &str) -> String {
    json!({"error": {"code": code, "message": message}}).to_string()
}

fn output_path(c: &Command) -> Option<&Path> {
    let common = match c {
        Command::Theta(a) => &a.common,
        Command::ClarkMeasures(a) | Command::SpectralFlow(a) => &a.common,
        Command::ClarkOperator(a) => &a.common,
        Command::Valpha(a) => &a.common,
        Command::Rigidity(a) => &a.common,
        Command::NormSweep(a) => &a.common,
        Command::IdentitySuite(a) => &a.common,
    };
    common.output.as_deref()
}

/// Parses `a+bi`, `a`, `bi`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    Complex64::from_str(s.trim())
        .ok()
        .filter(|z| z.re.is_finite() && z.im.is_finite())
        .ok_or_else(|| Error::InvalidParameter(format!("cannot parse complex number {s:?}")))
}

/// Parses `α` and renormalizes it onto the circle when it is off by more
/// than `1e-10`, with a warning on `err`.
fn parse_alpha(s: &str, err: &mut dyn Write) -> Result<Complex64> {
    let a = parse_complex(s)?;
    let r = a.norm();
    if r == 0.0 {
        return Err(Error::InvalidParameter("α must be nonzero".into()));
    }
    if (r - 1.0).abs() > 1e-10 {
        let _ = writeln!(err, "warning: |α| = {r}; using α/|α|");
    }
    Ok(a / r)
}

/// `0.5+0i` style formatting with the shortest round-trip digits.
pub fn format_complex(z: Complex64) -> String {
    let num = |x: f64| {
        let x = if x == 0.0 { 0.0 } else { x };
        if x != 0.0 && (x.abs() < 1e-6 || x.abs() >= 1e16) {
            format!("{x:e}")
        } else {
            format!("{x}")
        }
    };
    let sign = if z.im < 0.0 { '-' } else { '+' };
    format!("{}{sign}{}i", num(z.re), num(z.im.abs()))
}

fn pair(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn matrix_json(m: &CMatrix, source: &str, target: &str) -> Value {
    let rows: Vec<Value> = (0..m.nrows()).map(|i| Value::Array((0..m.ncols()).map(|j| pair(m[(i, j)])).collect())).collect();
    json!({"rows": m.nrows(), "cols": m.ncols(), "source_basis": source, "target_basis": target, "entries": rows})
}

fn report_json(r: &ClarkReport, tol: f64) -> Value {
    json!({
        "unitarity_residual": r.unitarity_residual,
        "intertwining_residual": r.intertwining_residual,
        "normalization_residual": r.normalization_residual,
        "tolerance": tol,
        "passed": r.max() <= tol,
    })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn load(p: &Path) -> Result<CircleMeasure> {
    CircleMeasure::load(p).map_err(|e| match e {
        Error::Io(m) => Error::Io(format!("{}: {m}", p.display())),
        Error::Json(m) => Error::Json(format!("{}: {m}", p.display())),
        other => other,
    })
}

fn alpha_grid(k: usize) -> Result<Vec<Complex64>> {
    if k == 0 {
        return Err(Error::InvalidParameter("--alphas must be positive".into()));
    }
    Ok((0..k).map(|j| Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / k as f64)).collect())
}

fn verified(v: Value, ok: bool) -> Outcome {
    if ok {
        Outcome::Done(pretty(&v))
    } else {
        Outcome::VerifyFailed(pretty(&v))
    }
}

fn dispatch(cmd: Command, err: &mut dyn Write) -> Result<Outcome> {
    match cmd {
        Command::Theta(a) => {
            let mu = load(&a.common.measure)?;
            let gamma = parse_complex(&a.gamma)?;
            if a.rational {
                let th = rational_theta_gamma(&mu, gamma)?;
                let zeros: Vec<Value> = th.zeros().iter().map(|&z| pair(z)).collect();
                let num: Vec<Value> = th.numerator().iter().map(|&z| pair(z)).collect();
                let den: Vec<Value> = th.denominator().iter().map(|&z| pair(z)).collect();
                let v = json!({"degree": th.degree(), "zeros": zeros, "constant": pair(th.constant()), "num": num, "den": den});
                return Ok(Outcome::Done(pretty(&v)));
            }
            let z = parse_complex(a.at.as_deref().unwrap_or_default())?;
            let value = CharFunction::new(&mu, gamma)?.eval(z)?;
            Ok(Outcome::Done(format!("{}\n", format_complex(value))))
        }
        Command::ClarkMeasures(a) => {
            let mu = load(&a.common.measure)?;
            let family = ClarkFamily::new(&mu)?;
            let measures: Vec<Value> = alpha_grid(a.alphas)?
                .par_iter()
                .map(|&al| family.measure(al).map(|m| m.to_json_value()))
                .collect::<Result<_>>()?;
            Ok(Outcome::Done(pretty(&Value::Array(measures))))
        }
        Command::ClarkOperator(a) => {
            let mu = load(&a.common.measure)?;
            let op = phi_star_matrix(&mu, parse_complex(&a.gamma)?)?;
            if a.verify {
                let r = op.verify()?;
                return Ok(verified(report_json(&r, a.tol), r.max() <= a.tol));
            }
            let m = &op.matrix;
            Ok(Outcome::Done(pretty(&matrix_json(&m.matrix, &m.source_basis, &m.target_basis))))
        }
        Command::SpectralFlow(a) => {
            let mu = load(&a.common.measure)?;
            alpha_grid(a.alphas)?;
            let rows = spectral_flow(&mu, a.alphas)?;
            let n = mu.len();
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut header = vec!["alpha_angle".to_string()];
            header.extend((1..=n).map(|k| format!("eigenvalue_angle_{k}")));
            header.extend((1..=n).map(|k| format!("mass_{k}")));
            w.write_record(&header).map_err(csv_err)?;
            for r in rows {
                let mut rec = vec![r.alpha_angle.to_string()];
                rec.extend(r.angles.iter().map(f64::to_string));
                rec.extend(r.masses.iter().map(f64::to_string));
                w.write_record(&rec).map_err(csv_err)?;
            }
            Ok(Outcome::Done(csv_text(w)?))
        }
        Command::Valpha(a) => {
            let mu = load(&a.common.measure)?;
            let v = v_alpha_matrix(&mu, parse_alpha(&a.alpha, err)?)?;
            if a.verify {
                let r = v.verify()?;
                return Ok(verified(report_json(&r, a.tol), r.max() <= a.tol));
            }
            let m = &v.matrix;
            let out = json!({
                "mu_alpha": v.mu_alpha.to_json_value(),
                "matrix": matrix_json(&m.matrix, &m.source_basis, &m.target_basis),
            });
            Ok(Outcome::Done(pretty(&out)))
        }
        Command::Rigidity(a) => {
            let mu = load(&a.common.measure)?;
            let nu = load(&a.nu)?;
            let rep = rigidity_check(&mu, &nu, parse_alpha(&a.alpha, err)?)?;
            Ok(Outcome::Done(pretty(&serde_json::to_value(&rep).map_err(|e| Error::Json(e.to_string()))?)))
        }
        Command::NormSweep(a) => {
            let mu = load(&a.common.measure)?;
            let gamma = parse_complex(&a.gamma)?;
            let radii = a.radii.unwrap_or_else(|| SWEEP_RADII.to_vec());
            let rows = norm_sweep(&mu, gamma, &radii, a.grid, &RadialLimitConfig::default())?;
            let source = a.common.measure.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            let target = format!("v_gamma={}", format_complex(gamma));
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["r", "norm", "source_id", "target_id"]).map_err(csv_err)?;
            for r in rows {
                w.write_record([r.r.to_string(), r.norm.to_string(), source.clone(), target.clone()]).map_err(csv_err)?;
            }
            Ok(Outcome::Done(csv_text(w)?))
        }
        Command::IdentitySuite(a) => {
            let mu = load(&a.common.measure)?;
            let rep = identity_suite(&mu, parse_complex(&a.gamma)?, a.grid, a.tol, &RadialLimitConfig::default())?;
            let v = serde_json::to_value(&rep).map_err(|e| Error::Json(e.to_string()))?;
            Ok(verified(v, rep.passed()))
        }
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

fn csv_text(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_formatting() {
        assert_eq!(format_complex(Complex64::new(0.5, 0.0)), "0.5+0i");
        assert_eq!(format_complex(Complex64::new(-0.0, -0.0)), "0+0i");
        assert_eq!(format_complex(Complex64::new(1.0, -2.5)), "1-2.5i");
        assert_eq!(format_complex(Complex64::new(4.0, -4.75e-16)), "4-4.75e-16i");
    }

    #[test]
    fn complex_parsing() {
        assert_eq!(parse_complex("0.3+0.4i").unwrap(), Complex64::new(0.3, 0.4));
        assert_eq!(parse_complex("0").unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(parse_complex("-i").unwrap(), Complex64::new(0.0, -1.0));
        assert!(parse_complex("abc").is_err());
    }

    #[test]
    fn alpha_is_renormalized() {
        let mut sink = Vec::new();
        let a = parse_alpha("2", &mut sink).unwrap();
        assert_eq!(a, Complex64::new(1.0, 0.0));
        assert!(String::from_utf8(sink).unwrap().starts_with("warning"));
        assert!(parse_alpha("0", &mut Vec::new()).is_err());
    }
}
