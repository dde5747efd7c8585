//! Command-line front end: `eval`, `coeffs`, `verify`, `figdata`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 bad arguments,
//! 3 numeric failure, 4 cancellation failure.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use crate::closedform::{
    d_modsq_deriv, d_modsq_deriv_printed, i_k, j1_closed, known_limits, ray_orders, IntegralValue,
    Method,
};
use crate::error::Error;
use crate::oracle::{
    fourier_spectrum, modsq_nu_derivative_fd, ode_cascade, ode_j1, verify_identity, GridSpec,
    Identity, SampledCurve, FD_STEP,
};
use crate::specfun::fresnel;
use crate::symbolic::{render, sym_expression, verify_cancellation, Format};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;
pub const EXIT_CANCELLATION: i32 = 4;

/// Environment variable overriding the default `verify --tol`.
pub const TOL_ENV: &str = "OSCINT_DEFAULT_TOL";
pub const DEFAULT_TOL: f64 = 1e-8;

/// Floor for checks limited by finite differencing in ν.
pub const FD_REL_TOL: f64 = 1e-4;
/// Floor for limits read off at finite τ (windowed mean or τ = −40).
pub const FINITE_LIMIT_TOL: f64 = 1e-3;
/// Window over which the Stückelberg oscillation is averaged out.
pub const LIMIT_WINDOW: (f64, f64) = (50.0, 70.0);

#[derive(Parser, Debug)]
#[command(
    name = "oscint",
    version,
    about = "Finite-time nested oscillatory integrals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the data stream here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tabulate I_k(τ) from the closed form, optionally with the ODE oracle.
    Eval(EvalArgs),
    /// Print the exact coefficient expression of I_k.
    Coeffs(CoeffsArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Emit CSV data behind a figure.
    Figdata(FigArgs),
}

#[derive(Args, Debug)]
struct EvalArgs {
    /// Order or range, e.g. `3` or `1..5`.
    #[arg(long, default_value = "1")]
    k: KRange,
    /// Single value or `start:end:count`.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    tau: TauRange,
    /// Also integrate the ODE cascade and emit its rows.
    #[arg(long)]
    oracle: bool,
    /// Finite stand-in for −∞ used by the ODE oracle.
    #[arg(long, default_value_t = GridSpec::DEFAULT_TAU_START, allow_hyphen_values = true)]
    tau_start: f64,
    #[arg(long, value_enum, default_value_t = DataFormat::Csv)]
    format: DataFormat,
}

#[derive(Args, Debug)]
struct CoeffsArgs {
    #[arg(long, default_value = "1")]
    k: KRange,
    #[arg(long, value_enum, default_value_t = ExprFormat::Text)]
    format: ExprFormat,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    /// Residual tolerance; falls back to $OSCINT_DEFAULT_TOL, then 1e-8.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args, Debug)]
struct FigArgs {
    #[arg(long, value_enum)]
    fig: Figure,
    /// Overrides the figure's default τ grid.
    #[arg(long, allow_hyphen_values = true)]
    tau: Option<TauRange>,
    #[arg(long, default_value = "1..5")]
    k: KRange,
    #[arg(long, default_value_t = GridSpec::DEFAULT_TAU_START, allow_hyphen_values = true)]
    tau_start: f64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DataFormat {
    Csv,
    Structured,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ExprFormat {
    Text,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Suite {
    Identities,
    Limits,
    Derivatives,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Figure {
    Spectrum,
    Circle,
    ZTrajectory,
    Ik,
    I1j1,
    Derivatives,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct KRange {
    lo: usize,
    hi: usize,
}

impl FromStr for KRange {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("invalid order `{t}`"))
        };
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
            None => {
                let k = parse(s)?;
                (k, k)
            }
        };
        if lo == 0 || hi < lo {
            return Err(format!("order range `{s}` must satisfy 1 ≤ lo ≤ hi"));
        }
        Ok(KRange { lo, hi })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct TauRange {
    start: f64,
    end: f64,
    n: usize,
}

impl TauRange {
    fn new(start: f64, end: f64, n: usize) -> Self {
        TauRange { start, end, n }
    }

    fn points(&self) -> Vec<f64> {
        if self.n == 1 {
            return vec![self.start];
        }
        (0..self.n)
            .map(|i| {
                if i + 1 == self.n {
                    self.end
                } else {
                    self.start + (self.end - self.start) * i as f64 / (self.n - 1) as f64
                }
            })
            .collect()
    }
}

impl FromStr for TauRange {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| format!("invalid τ value `{t}`"))
        };
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [v] => Ok(TauRange::new(num(v)?, num(v)?, 1)),
            [a, b, n] => {
                let n: usize = n
                    .trim()
                    .parse()
                    .map_err(|_| format!("invalid point count `{n}`"))?;
                let (a, b) = (num(a)?, num(b)?);
                if n < 2 || b <= a {
                    return Err(format!("τ range `{s}` needs end > start and count ≥ 2"));
                }
                Ok(TauRange::new(a, b, n))
            }
            _ => Err(format!("τ must be `value` or `start:end:count`, got `{s}`")),
        }
    }
}

/// Decimal with 17 significant digits, trailing zeros trimmed.
pub fn fmt17(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let e = v.abs().log10().floor() as i32;
    let s = if (-5..17).contains(&e) {
        format!("{:.*}", (16 - e).max(0) as usize, v)
    } else {
        format!("{v:.16e}")
    };
    let (mantissa, exp) = match s.split_once('e') {
        Some((m, x)) => (m.to_string(), format!("e{x}")),
        None => (s, String::new()),
    };
    let mantissa = if mantissa.contains('.') {
        mantissa
            .trim_end_matches('0')
            .trim_end_matches('.')
            .to_string()
    } else {
        mantissa
    };
    format!("{mantissa}{exp}")
}

enum Failure {
    Numeric(Error),
    Io(std::io::Error),
    Code(i32),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Numeric(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = Result<(), Failure>;

/// Parse `args` (program name first) and run. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let mut file;
    let sink: &mut dyn Write = match &cli.output {
        Some(path) => match std::fs::File::create(path) {
            Ok(f) => {
                file = std::io::BufWriter::new(f);
                &mut file
            }
            Err(e) => {
                let _ = writeln!(err, "error: cannot open {}: {e}", path.display());
                return EXIT_USAGE;
            }
        },
        None => out,
    };
    let result = match &cli.command {
        Command::Eval(a) => cmd_eval(a, sink),
        Command::Coeffs(a) => cmd_coeffs(a, sink, err),
        Command::Verify(a) => cmd_verify(a, sink, err),
        Command::Figdata(a) => cmd_figdata(a, sink),
    }
    .and_then(|_| sink.flush().map_err(Failure::Io));
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Numeric(e)) => {
            let _ = writeln!(err, "error: numeric failure in {}: {e}", e.op());
            EXIT_NUMERIC
        }
        // downstream closed the pipe (e.g. `| head`): not an error
        Err(Failure::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_NUMERIC
        }
        Err(Failure::Code(c)) => c,
    }
}

fn usage(err: &mut dyn Write, msg: impl fmt::Display) -> Failure {
    let _ = writeln!(err, "error: {msg}");
    Failure::Code(EXIT_USAGE)
}

/// Samples of the ODE cascade at arbitrary τ (ascending), one curve per level.
fn oracle_curves(k_max: usize, taus: &[f64], tau_start: f64) -> crate::Result<Vec<SampledCurve>> {
    let (lo, hi) = (taus[0], taus[taus.len() - 1]);
    if taus.len() == 1 {
        let grid = GridSpec::window(tau_start, hi, 2).with_start(tau_start);
        let mut curves = ode_cascade(k_max, grid)?;
        for c in &mut curves {
            c.tau.remove(0);
            c.values.remove(0);
            c.err.remove(0);
        }
        return Ok(curves);
    }
    ode_cascade(
        k_max,
        GridSpec::window(lo, hi, taus.len()).with_start(tau_start),
    )
}

fn cmd_eval(a: &EvalArgs, out: &mut dyn Write) -> Outcome {
    let taus = a.tau.points();
    let oracle = if a.oracle {
        Some(oracle_curves(a.k.hi, &taus, a.tau_start)?)
    } else {
        None
    };
    let mut rows = Vec::new();
    for k in a.k.lo..=a.k.hi {
        for (j, &tau) in taus.iter().enumerate() {
            rows.push(i_k(k, tau)?);
            if let Some(curves) = &oracle {
                let (_, value, err_estimate) = curves[k - 1].at(j);
                rows.push(IntegralValue {
                    k,
                    tau,
                    value,
                    method: Method::Ode,
                    err_estimate,
                });
            }
        }
    }
    match a.format {
        DataFormat::Csv => {
            writeln!(out, "k,tau,value,method,err_estimate")?;
            for r in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.k,
                    fmt17(r.tau),
                    fmt17(r.value),
                    r.method,
                    fmt17(r.err_estimate)
                )?;
            }
        }
        DataFormat::Structured => {
            serde_json::to_writer_pretty(&mut *out, &rows).map_err(std::io::Error::from)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn cmd_coeffs(a: &CoeffsArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let fmt = match a.format {
        ExprFormat::Text => Format::Text,
        ExprFormat::Structured => Format::Structured,
    };
    let mut failed = false;
    for k in a.k.lo..=a.k.hi {
        let expr = sym_expression(k)?;
        let report = verify_cancellation(&expr);
        if !report.pass {
            writeln!(err, "{report}")?;
            failed = true;
            continue;
        }
        writeln!(out, "{}", render(&expr, fmt)?)?;
    }
    if failed {
        return Err(Failure::Code(EXIT_CANCELLATION));
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
struct CheckResult {
    id: String,
    residual: f64,
    tol: f64,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

impl CheckResult {
    fn new(id: String, residual: f64, tol: f64) -> Self {
        CheckResult {
            id,
            residual,
            tol,
            pass: residual <= tol,
            error: None,
        }
    }

    fn failed(id: String, tol: f64, e: Error) -> Self {
        CheckResult {
            id,
            residual: f64::INFINITY,
            tol,
            pass: false,
            error: Some(e.to_string()),
        }
    }

    fn from_result(id: String, tol: f64, r: crate::Result<f64>) -> Self {
        match r {
            Ok(res) => CheckResult::new(id, res, tol),
            Err(e) => CheckResult::failed(id, tol, e),
        }
    }
}

#[derive(Serialize)]
struct VerifyReport {
    suite: Suite,
    results: Vec<CheckResult>,
}

fn resolve_tol(explicit: Option<f64>, err: &mut dyn Write) -> Result<f64, Failure> {
    let tol = match explicit {
        Some(t) => t,
        None => match std::env::var(TOL_ENV) {
            Ok(s) => s
                .trim()
                .parse()
                .map_err(|_| usage(err, format!("{TOL_ENV}={s} is not a number")))?,
            Err(_) => DEFAULT_TOL,
        },
    };
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(usage(err, format!("tolerance {tol} must be positive")));
    }
    Ok(tol)
}

/// (τ, ν) samples used by `verify --suite identities`.
pub const IDENTITY_SAMPLES: [(f64, f64); 3] = [(-2.0, 0.3), (0.5, 0.5), (1.5, 1.0)];
/// The τ → −∞ limit is read off here.
pub const INITIAL_LIMIT_SAMPLE: (f64, f64) = (-40.0, 0.3);

fn suite_identities(tol: f64) -> Vec<CheckResult> {
    Identity::ALL
        .iter()
        .map(|&which| {
            let (samples, tol): (&[(f64, f64)], f64) = if which == Identity::InitialLimit {
                (&[INITIAL_LIMIT_SAMPLE], tol.max(FINITE_LIMIT_TOL))
            } else {
                (&IDENTITY_SAMPLES, tol)
            };
            let report = verify_identity(which, samples, tol);
            let error = report.samples.iter().find_map(|s| s.error.clone());
            CheckResult {
                id: report.id.to_string(),
                residual: report.max_residual(),
                tol,
                pass: report.pass(),
                error,
            }
        })
        .collect()
}

fn suite_limits(tol: f64) -> Vec<CheckResult> {
    let mut results = Vec::new();
    for k in 1..=5 {
        let (at_zero, _) = known_limits(k);
        results.push(CheckResult::from_result(
            format!("crossing-k{k}"),
            tol,
            i_k(k, 0.0).map(|v| (v.value / at_zero - 1.0).abs()),
        ));
    }
    let limit_tol = tol.max(FINITE_LIMIT_TOL);
    let (lo, hi) = LIMIT_WINDOW;
    match ode_cascade(5, GridSpec::window(lo, hi, 4001)) {
        Ok(curves) => {
            for (l, c) in curves.iter().enumerate() {
                let k = l + 1;
                let mean = c.values.iter().sum::<f64>() / c.len() as f64;
                let (_, at_inf) = known_limits(k);
                results.push(CheckResult::new(
                    format!("asymptote-k{k}"),
                    (mean / at_inf - 1.0).abs(),
                    limit_tol,
                ));
            }
        }
        Err(e) => {
            for k in 1..=5 {
                results.push(CheckResult::failed(
                    format!("asymptote-k{k}"),
                    limit_tol,
                    e.clone(),
                ));
            }
        }
    }
    results
}

/// τ grid of the derivative checks.
pub const DERIVATIVE_GRID: (f64, f64, usize) = (-4.0, 6.0, 51);

fn derivative_grid() -> Vec<f64> {
    let (a, b, n) = DERIVATIVE_GRID;
    TauRange::new(a, b, n).points()
}

fn suite_derivatives(tol: f64) -> Vec<CheckResult> {
    let fd_tol = tol.max(FD_REL_TOL);
    let mut results = Vec::new();
    for n in 1..=4 {
        let fd = derivative_grid()
            .into_iter()
            .try_fold(0.0f64, |worst, tau| {
                let exact = d_modsq_deriv_printed(n, 0, tau)?;
                let approx = modsq_nu_derivative_fd(n, 0, tau, FD_STEP[n - 1])?;
                Ok(worst.max(((exact - approx) / exact).abs()))
            });
        results.push(CheckResult::from_result(
            format!("finite-difference-n{n}"),
            fd_tol,
            fd,
        ));
        // the printed forms against the general generator, relative to scale
        let general = derivative_grid()
            .into_iter()
            .try_fold(0.0f64, |worst, tau| {
                let printed = d_modsq_deriv_printed(n, 0, tau)?;
                let generated = d_modsq_deriv(n, 0, tau)?;
                Ok(worst.max((printed - generated).abs() / printed.abs().max(1.0)))
            });
        results.push(CheckResult::from_result(
            format!("generated-n{n}"),
            tol,
            general,
        ));
    }
    results
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let tol = resolve_tol(a.tol, err)?;
    let results = match a.suite {
        Suite::Identities => suite_identities(tol),
        Suite::Limits => suite_limits(tol),
        Suite::Derivatives => suite_derivatives(tol),
    };
    writeln!(
        out,
        "{:<24} {:>12} {:>10}  status",
        "check", "residual", "tol"
    )?;
    for r in &results {
        writeln!(
            out,
            "{:<24} {:>12.3e} {:>10.1e}  {}",
            r.id,
            r.residual,
            r.tol,
            if r.pass { "pass" } else { "FAIL" }
        )?;
        if let Some(e) = &r.error {
            writeln!(out, "    {e}")?;
        }
    }
    let all = results.iter().all(|r| r.pass);
    let report = VerifyReport {
        suite: a.suite,
        results,
    };
    serde_json::to_writer(&mut *out, &report).map_err(std::io::Error::from)?;
    writeln!(out)?;
    if all {
        Ok(())
    } else {
        Err(Failure::Code(EXIT_VERIFY))
    }
}

fn csv_row(out: &mut dyn Write, cells: &[f64]) -> std::io::Result<()> {
    let line: Vec<String> = cells.iter().map(|&v| fmt17(v)).collect();
    writeln!(out, "{}", line.join(","))
}

fn cmd_figdata(a: &FigArgs, out: &mut dyn Write) -> Outcome {
    let default = match a.fig {
        Figure::Spectrum => TauRange::new(-40.0, 40.0, 801),
        Figure::Circle => TauRange::new(-10.0, 10.0, 401),
        Figure::ZTrajectory => TauRange::new(-10.0, 20.0, 600),
        Figure::Ik | Figure::I1j1 => TauRange::new(-6.0, 10.0, 321),
        Figure::Derivatives => TauRange::new(-4.0, 6.0, 101),
    };
    let taus = a.tau.unwrap_or(default).points();
    match a.fig {
        Figure::Spectrum => {
            let values = taus
                .iter()
                .map(|&t| Ok(ray_orders(0, t)?[0].norm_sqr()))
                .collect::<crate::Result<Vec<f64>>>()?;
            let n = values.len();
            let spec = fourier_spectrum(&SampledCurve {
                tau: taus,
                values,
                err: vec![0.0; n],
            })?;
            writeln!(out, "omega,modulus")?;
            for (w, m) in spec.tau.iter().zip(&spec.values) {
                csv_row(out, &[*w, *m])?;
            }
        }
        Figure::Circle => {
            writeln!(out, "tau,x,y,r2,area,pi_r2")?;
            for &t in &taus {
                let (x, y) = fresnel((2.0 / std::f64::consts::PI).sqrt() * t);
                let r2 = (x + 0.5).powi(2) + (y + 0.5).powi(2);
                let area = ray_orders(0, t)?[0].norm_sqr();
                csv_row(out, &[t, x, y, r2, area, std::f64::consts::PI * r2])?;
            }
        }
        Figure::ZTrajectory => {
            writeln!(out, "tau,I1,J1")?;
            for &t in &taus {
                csv_row(out, &[t, i_k(1, t)?.value, j1_closed(t, a.tau_start)?])?;
            }
        }
        Figure::Ik => {
            writeln!(out, "k,tau,value,k_factorial_scaled")?;
            for k in a.k.lo..=a.k.hi {
                let fact: f64 = (1..=k).map(|j| j as f64).product();
                for &t in &taus {
                    let v = i_k(k, t)?.value;
                    csv_row(out, &[k as f64, t, v, fact * v])?;
                }
            }
        }
        Figure::I1j1 => {
            let i1 = oracle_curves(1, &taus, a.tau_start)?.remove(0);
            let j1 = if taus.len() == 1 {
                let g = GridSpec::window(a.tau_start, taus[0], 2).with_start(a.tau_start);
                let c = ode_j1(g)?;
                vec![c.values[1]]
            } else {
                let (lo, hi) = (taus[0], taus[taus.len() - 1]);
                ode_j1(GridSpec::window(lo, hi, taus.len()).with_start(a.tau_start))?.values
            };
            writeln!(out, "tau,I1_closed,I1_ode,J1_closed,J1_ode")?;
            for (j, &t) in taus.iter().enumerate() {
                csv_row(
                    out,
                    &[
                        t,
                        i_k(1, t)?.value,
                        i1.values[j],
                        j1_closed(t, a.tau_start)?,
                        j1[j],
                    ],
                )?;
            }
        }
        Figure::Derivatives => {
            writeln!(out, "n,tau,analytic,finite_difference")?;
            for n in 1..=2 {
                for &t in &taus {
                    let exact = d_modsq_deriv_printed(n, 0, t)?;
                    let fd = modsq_nu_derivative_fd(n, 0, t, FD_STEP[n - 1])?;
                    csv_row(out, &[n as f64, t, exact, fd])?;
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(fmt17(0.0), "0");
        assert_eq!(fmt17(-6.0), "-6");
        assert_eq!(fmt17(0.39269908169872414), "0.39269908169872414");
        assert_eq!(fmt17(1.5e-20).parse::<f64>().unwrap(), 1.5e-20);
        assert_eq!(fmt17(-2.5e20), "-2.5e20");
        assert_eq!(fmt17(0.1).parse::<f64>().unwrap(), 0.1);
    }

    #[test]
    fn ranges() {
        assert_eq!("1..5".parse::<KRange>().unwrap(), KRange { lo: 1, hi: 5 });
        assert_eq!("3".parse::<KRange>().unwrap(), KRange { lo: 3, hi: 3 });
        assert!("0..2".parse::<KRange>().is_err());
        assert!("5..1".parse::<KRange>().is_err());
        let t: TauRange = "-6:10:321".parse().unwrap();
        let p = t.points();
        assert_eq!((p.len(), p[0], p[320]), (321, -6.0, 10.0));
        assert!("1:0:5".parse::<TauRange>().is_err());
        assert!("nan".parse::<TauRange>().is_err());
    }
}
