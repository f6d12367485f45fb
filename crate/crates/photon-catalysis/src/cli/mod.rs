//! Command-line surface: one subcommand per capability, CSV/JSON output.
//!
//! Exit codes: 0 success, 1 verification failure or internal error,
//! 2 parse/validation error, 3 degenerate herald, 4 truncation failure.

mod output;

pub use output::{fmt_float, Cell, Format, Table};

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use crate::analytic::{moments_analytic, p_success, spccs_coefficients, wigner_closed, CatalysisParams};
use crate::devices::DeviceKind;
use crate::error::{Error, Result};
use crate::math::positive_finite;
use crate::phase_space::{negativity_volume, PhaseSpaceRegion, DEFAULT_GRID_STEP};
use crate::scan::{find_extremum, scan_metric, ExtremumKind, Metric, ScanRequest};
use crate::verify::{run_suite, VerifyOptions};

/// Parse a complex amplitude: `re`, `re,im`, or `mag@phase-deg`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let bad = |what: &str| Error::InvalidParameter(format!("bad complex '{s}': {what}"));
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| bad("not a number"));
    if let Some((mag, deg)) = s.split_once('@') {
        return Ok(Complex64::from_polar(num(mag)?, num(deg)?.to_radians()));
    }
    if let Some((re, im)) = s.split_once(',') {
        return Ok(Complex64::new(num(re)?, num(im)?));
    }
    Ok(Complex64::new(num(s)?, 0.0))
}

/// Parse `x` or `lo:hi:step` into an inclusive sweep.
pub fn parse_sweep(s: &str) -> Result<Vec<f64>> {
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|_| Error::InvalidParameter(format!("bad number '{t}' in sweep '{s}'")))
    };
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [one] => Ok(vec![num(one)?]),
        [lo, hi, step] => {
            let (lo, hi, step) = (num(lo)?, num(hi)?, num(step)?);
            if !positive_finite(step) || hi < lo {
                return Err(Error::InvalidParameter(format!("bad sweep '{s}'")));
            }
            let mut values = Vec::new();
            let mut k = 0usize;
            loop {
                let v = lo + k as f64 * step;
                if v > hi + 1e-12 {
                    break;
                }
                values.push(v.min(hi));
                k += 1;
            }
            Ok(values)
        }
        _ => Err(Error::InvalidParameter(format!("bad sweep '{s}' (expected x or lo:hi:step)"))),
    }
}

fn parse_bracket(s: &str) -> Result<(f64, f64)> {
    let parts: Vec<&str> = s.split(':').collect();
    if let [lo, hi] = parts.as_slice() {
        let lo = lo.trim().parse::<f64>();
        let hi = hi.trim().parse::<f64>();
        if let (Ok(lo), Ok(hi)) = (lo, hi) {
            return Ok((lo, hi));
        }
    }
    Err(Error::InvalidParameter(format!("bad bracket '{s}' (expected lo:hi)")))
}

fn parse_device(s: &str) -> Result<DeviceKind> {
    match s {
        "bs" => Ok(DeviceKind::BeamSplitter),
        "pa" => Ok(DeviceKind::ParametricAmplifier),
        other => Err(Error::InvalidParameter(format!("unknown device '{other}' (bs|pa)"))),
    }
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    /// Output format
    #[arg(long, default_value = "csv", value_parser = ["csv", "json"])]
    format: String,
    /// Write to this path (atomically) instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

impl OutputArgs {
    fn emit(&self, table: &Table) -> Result<()> {
        table.emit(Format::parse(&self.format)?, self.out.as_deref())
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "spccs",
    version,
    about = "Single-photon catalyzed coherent states: closed forms, device oracles, scans"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fock coefficients ωₙ and superposition weights of one catalyzed state
    State {
        /// Input amplitude α ("re", "re,im", or "mag@deg")
        #[arg(long)]
        alpha: String,
        /// Catalysis parameter Λ ∈ [0, 1]
        #[arg(long)]
        lambda: f64,
        /// Override the number-basis window
        #[arg(long)]
        trunc: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Heralding probability surfaces p_BS and p_PA over (|α|, Λ)
    Prob {
        /// |α| values ("x" or "lo:hi:step", repeatable)
        #[arg(long, default_values_t = [String::from("0:3:0.1")])]
        alpha: Vec<String>,
        /// Λ values ("x" or "lo:hi:step", repeatable)
        #[arg(long, default_values_t = [String::from("0:1:0.05")])]
        lambda: Vec<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Photon-number distribution P(n) of one catalyzed state
    Pnd {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        trunc: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Moment set (Q, g², variances, dB squeezing) per parameter point
    Metrics {
        /// α values (repeatable)
        #[arg(long, required = true)]
        alpha: Vec<String>,
        /// Λ value or sweep "lo:hi:step"
        #[arg(long)]
        lambda: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Dense sweep of one metric over (α, Λ) with regime classification
    Scan {
        /// Metric: q|g2|var_x|db_x|delta|p_bs|p_pa|pnd
        #[arg(long)]
        metric: String,
        /// α values (repeatable)
        #[arg(long, required = true)]
        alpha: Vec<String>,
        /// Λ sweep "lo:hi:step" (or single value)
        #[arg(long, default_value = "0:1:0.01")]
        lambda: String,
        /// Quadrature resolution for delta sweeps
        #[arg(long, default_value_t = DEFAULT_GRID_STEP)]
        step: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Golden-section extremum of a metric over Λ on a bracket
    Extremum {
        #[arg(long)]
        metric: String,
        #[arg(long)]
        alpha: String,
        /// Search bracket "lo:hi"
        #[arg(long, default_value = "0.01:0.99")]
        bracket: String,
        /// min or max
        #[arg(long, default_value = "min", value_parser = ["min", "max"])]
        kind: String,
        /// Bracket-width tolerance
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Wigner function W(q, p) on a grid around the state's center
    Wigner {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        lambda: f64,
        /// Grid step in q, p units
        #[arg(long, default_value_t = 0.1)]
        step: f64,
        /// Half-width of the grid in q, p units
        #[arg(long, default_value_t = 4.0)]
        span: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Negative volume δ of the Wigner function
    Delta {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        lambda: f64,
        /// Quadrature resolution (finest panel width)
        #[arg(long, default_value_t = DEFAULT_GRID_STEP)]
        step: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Cross-check every closed form against the device oracle
    Verify {
        /// α grid override (repeatable)
        #[arg(long)]
        alpha: Vec<String>,
        /// Λ grid override (repeatable)
        #[arg(long)]
        lambda: Vec<f64>,
        /// Restrict to one device: bs|pa
        #[arg(long)]
        device: Option<String>,
        /// Fidelity-deficit tolerance
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn complex_meta(table: &mut Table, alpha: Complex64, lambda: f64) {
    table.meta_float("alpha_re", alpha.re);
    table.meta_float("alpha_im", alpha.im);
    table.meta_float("lambda", lambda);
}

fn cmd_state(alpha: Complex64, lambda: f64, trunc: Option<usize>) -> Result<Table> {
    let params = CatalysisParams::new(alpha, lambda)?;
    let n_max = trunc.unwrap_or_else(|| params.default_n_max());
    let s = spccs_coefficients(&params, n_max);
    let mut table = Table::new("state", vec!["n", "probability", "omega_re", "omega_im"]);
    complex_meta(&mut table, alpha, lambda);
    table.meta_cell("truncation", Cell::Int(n_max as i64));
    let weight_meta = |table: &mut Table, keys: [&'static str; 4], w: Option<(Complex64, Complex64)>| {
        let (w0, w1) = match w {
            Some((a, b)) => (
                [Cell::Float(a.re), Cell::Float(a.im)],
                [Cell::Float(b.re), Cell::Float(b.im)],
            ),
            None => ([Cell::Null, Cell::Null], [Cell::Null, Cell::Null]),
        };
        let mut cells = w0.into_iter().chain(w1);
        for key in keys {
            table.meta_cell(key, cells.next().unwrap());
        }
    };
    weight_meta(&mut table, ["c0_re", "c0_im", "c1_re", "c1_im"], s.bs_weights);
    weight_meta(&mut table, ["d0_re", "d0_im", "d1_re", "d1_im"], s.pa_weights);
    table.meta_float("p_bs", s.p_bs);
    table.meta_float("p_pa", s.p_pa);
    for (n, amp) in s.omega.amplitudes().iter().enumerate() {
        table.push(vec![
            Cell::Int(n as i64),
            Cell::Float(amp.norm_sqr()),
            Cell::Float(amp.re),
            Cell::Float(amp.im),
        ]);
    }
    Ok(table)
}

fn cmd_prob(alphas: &[String], lambdas: &[String]) -> Result<Table> {
    let mut mags = Vec::new();
    for spec in alphas {
        mags.extend(parse_sweep(spec)?);
    }
    let mut cats = Vec::new();
    for spec in lambdas {
        cats.extend(parse_sweep(spec)?);
    }
    let mut table = Table::new("prob", vec!["alpha_abs", "lambda", "p_bs", "p_pa"]);
    for &mag in &mags {
        if mag < 0.0 {
            return Err(Error::InvalidParameter(format!("|alpha| = {mag} must be nonnegative")));
        }
        for &l in &cats {
            let params = CatalysisParams::new(Complex64::new(mag, 0.0), l)?;
            table.push(vec![
                Cell::Float(mag),
                Cell::Float(l),
                Cell::Float(p_success(&params, DeviceKind::BeamSplitter)),
                Cell::Float(p_success(&params, DeviceKind::ParametricAmplifier)),
            ]);
        }
    }
    Ok(table)
}

fn cmd_pnd(alpha: Complex64, lambda: f64, trunc: Option<usize>) -> Result<Table> {
    let params = CatalysisParams::new(alpha, lambda)?;
    let n_max = trunc.unwrap_or_else(|| params.default_n_max());
    let dist = crate::analytic::pnd(&params, n_max);
    let mut table = Table::new("pnd", vec!["n", "probability"]);
    complex_meta(&mut table, alpha, lambda);
    table.meta_cell("truncation", Cell::Int(n_max as i64));
    for (n, p) in dist.into_iter().enumerate() {
        table.push(vec![Cell::Int(n as i64), Cell::Float(p)]);
    }
    Ok(table)
}

fn cmd_metrics(alphas: &[String], lambda: &str) -> Result<Table> {
    let lambdas = parse_sweep(lambda)?;
    let mut table = Table::new(
        "metrics",
        vec![
            "alpha_re", "alpha_im", "lambda", "mean_a_re", "mean_a_im", "mean_a2_re",
            "mean_a2_im", "n_mean", "n2", "q_mandel", "g2", "var_x", "var_p", "db_x", "db_p",
        ],
    );
    for spec in alphas {
        let alpha = parse_complex(spec)?;
        for &l in &lambdas {
            let m = moments_analytic(&CatalysisParams::new(alpha, l)?);
            table.push(vec![
                Cell::Float(alpha.re),
                Cell::Float(alpha.im),
                Cell::Float(l),
                Cell::Float(m.mean_a.re),
                Cell::Float(m.mean_a.im),
                Cell::Float(m.mean_a2.re),
                Cell::Float(m.mean_a2.im),
                Cell::Float(m.n_mean),
                Cell::Float(m.n2),
                Cell::opt_float(m.q_mandel),
                Cell::opt_float(m.g2),
                Cell::Float(m.var_x),
                Cell::Float(m.var_p),
                Cell::Float(m.db_x),
                Cell::Float(m.db_p),
            ]);
        }
    }
    Ok(table)
}

fn cmd_scan(metric: &str, alphas: &[String], lambda: &str, step: f64) -> Result<Table> {
    let metric = Metric::parse(metric)?;
    let lambdas = parse_sweep(lambda)?;
    let (lo, hi) = (lambdas[0], *lambdas.last().unwrap());
    let step_l = if lambdas.len() > 1 { lambdas[1] - lambdas[0] } else { 1.0 };
    let parsed: Result<Vec<Complex64>> = alphas.iter().map(|s| parse_complex(s)).collect();
    let mut request = ScanRequest::new(metric, parsed?, lo, hi, step_l)?;
    request.grid_step = step;
    let rows = scan_metric(&request)?;
    let mut table = Table::new(
        "scan",
        vec!["alpha_re", "alpha_im", "lambda", "n", "value", "classification"],
    );
    table.meta_cell("metric", Cell::Text(metric.label().into()));
    for row in rows {
        table.push(vec![
            Cell::Float(row.alpha.re),
            Cell::Float(row.alpha.im),
            Cell::Float(row.lambda),
            row.n.map(|n| Cell::Int(n as i64)).unwrap_or(Cell::Null),
            Cell::Float(row.value),
            Cell::Text(row.classification.into()),
        ]);
    }
    Ok(table)
}

fn cmd_extremum(
    metric: &str,
    alpha: Complex64,
    bracket: (f64, f64),
    kind: ExtremumKind,
    tol: f64,
) -> Result<Table> {
    let metric = Metric::parse(metric)?;
    let res = find_extremum(metric, alpha, bracket, kind, tol)?;
    let mut table = Table::new(
        "extremum",
        vec![
            "metric", "alpha_re", "alpha_im", "kind", "lambda_star", "value", "bracket_lo",
            "bracket_hi", "tolerance_achieved",
        ],
    );
    table.push(vec![
        Cell::Text(metric.label().into()),
        Cell::Float(alpha.re),
        Cell::Float(alpha.im),
        Cell::Text(res.kind.label().into()),
        Cell::Float(res.lambda_star),
        Cell::Float(res.value),
        Cell::Float(res.bracket.0),
        Cell::Float(res.bracket.1),
        Cell::Float(res.tolerance_achieved),
    ]);
    Ok(table)
}

fn cmd_wigner(alpha: Complex64, lambda: f64, step: f64, span: f64) -> Result<Table> {
    if !positive_finite(step) || !positive_finite(span) {
        return Err(Error::InvalidParameter("step and span must be positive".into()));
    }
    let params = CatalysisParams::new(alpha, lambda)?;
    let center = params.envelope_center() * std::f64::consts::SQRT_2; // (q₀, p₀)
    let mut table = Table::new("wigner", vec!["q", "p", "w"]);
    complex_meta(&mut table, alpha, lambda);
    table.meta_float("center_q", center.re);
    table.meta_float("center_p", center.im);
    table.meta_float("step", step);
    table.meta_float("span", span);
    let count = (2.0 * span / step).round() as usize;
    for i in 0..=count {
        let q = center.re - span + i as f64 * step;
        for j in 0..=count {
            let p = center.im - span + j as f64 * step;
            let beta = Complex64::new(q, p) / std::f64::consts::SQRT_2;
            table.push(vec![
                Cell::Float(q),
                Cell::Float(p),
                Cell::Float(wigner_closed(beta, &params)),
            ]);
        }
    }
    Ok(table)
}

fn cmd_delta(alpha: Complex64, lambda: f64, step: f64) -> Result<Table> {
    if !positive_finite(step) {
        return Err(Error::InvalidParameter("step must be positive".into()));
    }
    let params = CatalysisParams::new(alpha, lambda)?;
    let region = PhaseSpaceRegion::for_params(&params, step);
    let res = negativity_volume(|b| wigner_closed(b, &params), &region)?;
    let mut table = Table::new(
        "delta",
        vec!["delta", "abs_integral", "signed_integral", "error_estimate"],
    );
    complex_meta(&mut table, alpha, lambda);
    table.meta_float("center_re", region.center.re);
    table.meta_float("center_im", region.center.im);
    table.meta_float("radius", region.radius);
    table.meta_float("step", step);
    table.push(vec![
        Cell::Float(res.delta),
        Cell::Float(res.abs_integral),
        Cell::Float(res.signed_integral),
        Cell::Float(res.error_estimate),
    ]);
    Ok(table)
}

fn cmd_verify(
    alphas: &[String],
    lambdas: &[f64],
    device: Option<&str>,
    tol: f64,
) -> Result<(Table, bool)> {
    let mut opts = VerifyOptions { fidelity_tol: tol, ..VerifyOptions::default() };
    if !alphas.is_empty() {
        let parsed: Result<Vec<Complex64>> = alphas.iter().map(|s| parse_complex(s)).collect();
        opts.alphas = parsed?;
    }
    if !lambdas.is_empty() {
        opts.lambdas = lambdas.to_vec();
    }
    if let Some(d) = device {
        opts.device = Some(parse_device(d)?);
    }
    let results = run_suite(&opts)?;
    let mut table = Table::new("verify", vec!["check", "status", "detail"]);
    table.meta_float("fidelity_tol", tol);
    table.meta_cell(
        "device",
        opts.device.map(|d| Cell::Text(d.label().into())).unwrap_or(Cell::Text("both".into())),
    );
    let mut all_passed = true;
    for r in &results {
        all_passed &= r.passed;
        table.push(vec![
            Cell::Text(r.name.clone()),
            Cell::Text(if r.passed { "PASS" } else { "FAIL" }.into()),
            Cell::Text(r.detail.clone()),
        ]);
    }
    Ok((table, all_passed))
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::State { alpha, lambda, trunc, output } => {
            let table = cmd_state(parse_complex(&alpha)?, lambda, trunc)?;
            output.emit(&table)?;
            Ok(0)
        }
        Command::Prob { alpha, lambda, output } => {
            let table = cmd_prob(&alpha, &lambda)?;
            output.emit(&table)?;
            Ok(0)
        }
        Command::Pnd { alpha, lambda, trunc, output } => {
            let table = cmd_pnd(parse_complex(&alpha)?, lambda, trunc)?;
            output.emit(&table)?;
            Ok(0)
        }
        Command::Metrics { alpha, lambda, output } => {
            let table = cmd_metrics(&alpha, &lambda)?;
            output.emit(&table)?;
            Ok(0)
        }
        Command::Scan { metric, alpha, lambda, step, output } => {
            let table = cmd_scan(&metric, &alpha, &lambda, step)?;
            output.emit(&table)?;
            Ok(0)
        }
        Command::Extremum { metric, alpha, bracket, kind, tol, output } => {
            let kind = match kind.as_str() {
                "max" => ExtremumKind::Max,
                _ => ExtremumKind::Min,
            };
            let table =
                cmd_extremum(&metric, parse_complex(&alpha)?, parse_bracket(&bracket)?, kind, tol)?;
            output.emit(&table)?;
            Ok(0)
        }
        Command::Wigner { alpha, lambda, step, span, output } => {
            let table = cmd_wigner(parse_complex(&alpha)?, lambda, step, span)?;
            output.emit(&table)?;
            Ok(0)
        }
        Command::Delta { alpha, lambda, step, output } => {
            let table = cmd_delta(parse_complex(&alpha)?, lambda, step)?;
            output.emit(&table)?;
            Ok(0)
        }
        Command::Verify { alpha, lambda, device, tol, output } => {
            let (table, all_passed) = cmd_verify(&alpha, &lambda, device.as_deref(), tol)?;
            output.emit(&table)?;
            Ok(if all_passed { 0 } else { 1 })
        }
    }
}

/// Parse arguments and run; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 }; // --help/--version exit 0
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Binary entry point.
pub fn main() -> ! {
    let code = run(std::env::args_os());
    std::process::exit(code)
}
