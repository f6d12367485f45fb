//! Cross-route verification: every closed form checked against the
//! brute-force device oracle on a parameter grid. Shared by the `verify`
//! CLI command and the acceptance suite.

use num_complex::Complex64;

use crate::analytic::{
    moments_analytic, p_success, spccs_coefficients, wigner_closed, CatalysisParams,
};
use crate::devices::{catalyze_numeric, DeviceKind};
use crate::error::Result;
use crate::fock::{moment, FockVector, TruncationPolicy};
use crate::phase_space::{negativity_volume, wigner_numeric, PhaseSpaceRegion};

/// Outcome of one named check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn from_deviation(name: impl Into<String>, deviation: f64, tol: f64) -> Self {
        CheckResult {
            name: name.into(),
            passed: deviation <= tol,
            detail: format!("max deviation {deviation:.3e} (tolerance {tol:.1e})"),
        }
    }
}

/// Grid and tolerances for [`run_suite`].
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub alphas: Vec<Complex64>,
    pub lambdas: Vec<f64>,
    /// Restrict device-backed checks to one device.
    pub device: Option<DeviceKind>,
    /// Allowed fidelity deficit (1 − F) between routes.
    pub fidelity_tol: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            alphas: vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(2.0, 0.0),
                Complex64::new(1.0, 1.0),
            ],
            lambdas: vec![0.1, 0.5, 0.9],
            device: None,
            fidelity_tol: 1e-9,
        }
    }
}

struct OraclePoint {
    params: CatalysisParams,
    analytic: FockVector,
    states: Vec<(DeviceKind, crate::devices::HeraldResult)>,
}

fn oracle_grid(opts: &VerifyOptions) -> Result<Vec<OraclePoint>> {
    let policy = TruncationPolicy::adaptive();
    let kinds: Vec<DeviceKind> = match opts.device {
        Some(k) => vec![k],
        None => vec![DeviceKind::BeamSplitter, DeviceKind::ParametricAmplifier],
    };
    let mut points = Vec::new();
    for &alpha in &opts.alphas {
        for &lambda in &opts.lambdas {
            let params = CatalysisParams::new(alpha, lambda)?;
            let analytic = spccs_coefficients(&params, params.default_n_max()).omega;
            let mut states = Vec::new();
            for &kind in &kinds {
                states.push((kind, catalyze_numeric(alpha, lambda, kind, &policy)?));
            }
            points.push(OraclePoint { params, analytic, states });
        }
    }
    Ok(points)
}

/// Fidelity of every oracle state against the closed-form Fock vector and,
/// where both devices ran, against each other.
fn check_equivalence(points: &[OraclePoint], tol: f64) -> CheckResult {
    let mut worst: f64 = 0.0;
    for p in points {
        for (_, h) in &p.states {
            worst = worst.max(1.0 - h.state.fidelity(&p.analytic));
        }
        if let [(_, a), (_, b)] = &p.states[..] {
            worst = worst.max(1.0 - a.state.fidelity(&b.state));
        }
    }
    CheckResult::from_deviation("state-equivalence", worst, tol)
}

/// Heralding probabilities against p_BS = e^{−Λ|α|²}I₀ and p_PA = (1−Λ)p_BS.
fn check_probabilities(points: &[OraclePoint], tol: f64) -> CheckResult {
    let mut worst: f64 = 0.0;
    for p in points {
        for (kind, h) in &p.states {
            worst = worst.max((h.probability - p_success(&p.params, *kind)).abs());
        }
    }
    CheckResult::from_deviation("herald-probability", worst, tol)
}

/// Closed-form moments against direct Fock sums on the analytic vector.
fn check_moments(points: &[OraclePoint], tol: f64) -> CheckResult {
    let mut worst: f64 = 0.0;
    for p in points {
        let m = moments_analytic(&p.params);
        let pairs = [
            (m.mean_a, moment(&p.analytic, 0, 1)),
            (m.mean_a2, moment(&p.analytic, 0, 2)),
            (Complex64::new(m.n_mean, 0.0), moment(&p.analytic, 1, 1)),
            (Complex64::new(m.n2, 0.0), moment(&p.analytic, 2, 2)),
        ];
        for (closed, direct) in pairs {
            worst = worst.max((closed - direct).norm());
        }
    }
    CheckResult::from_deviation("moment-consistency", worst, tol)
}

fn check_pnd_normalization(points: &[OraclePoint]) -> CheckResult {
    let mut worst: f64 = 0.0;
    for p in points {
        let total: f64 = p.analytic.pnd().iter().sum();
        worst = worst.max((total - 1.0).abs());
    }
    CheckResult::from_deviation("pnd-normalization", worst, 1e-12)
}

fn check_uncertainty(points: &[OraclePoint]) -> CheckResult {
    let mut worst: f64 = f64::INFINITY;
    for p in points {
        let m = moments_analytic(&p.params);
        worst = worst.min(m.var_x * m.var_p);
    }
    CheckResult {
        name: "uncertainty-product".into(),
        passed: worst >= 0.25 - 1e-12,
        detail: format!("min ΔX²ΔP² = {worst:.12} (bound 0.25)"),
    }
}

/// Largest pointwise gap between a closed-form Wigner evaluator and the
/// Fock kernel on `state`, over a square grid around `center`.
pub fn wigner_cross_deviation<F>(
    closed: F,
    state: &FockVector,
    center: Complex64,
    half_width: f64,
    points_per_axis: usize,
) -> Result<f64>
where
    F: Fn(Complex64) -> f64,
{
    let n = points_per_axis.max(2);
    let step = 2.0 * half_width / (n - 1) as f64;
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let beta = center
                + Complex64::new(-half_width + i as f64 * step, -half_width + j as f64 * step);
            let numeric = wigner_numeric(state, beta)?;
            worst = worst.max((closed(beta) - numeric).abs());
        }
    }
    Ok(worst)
}

/// Pointwise agreement of a closed-form Wigner evaluator with the Fock
/// kernel on an oracle state. Exposed with an injectable evaluator so a
/// deliberately broken closed form is caught by the same code path the
/// suite runs.
pub fn wigner_cross_check<F>(
    closed: F,
    state: &FockVector,
    center: Complex64,
    half_width: f64,
    points_per_axis: usize,
    tol: f64,
) -> Result<CheckResult>
where
    F: Fn(Complex64) -> f64,
{
    let worst = wigner_cross_deviation(closed, state, center, half_width, points_per_axis)?;
    Ok(CheckResult::from_deviation("wigner-cross-path", worst, tol))
}

fn check_wigner(points: &[OraclePoint]) -> Result<CheckResult> {
    let mut worst: f64 = 0.0;
    for p in points {
        let (_, h) = &p.states[0];
        let params = p.params;
        let dev = wigner_cross_deviation(
            move |b| wigner_closed(b, &params),
            &h.state,
            p.params.envelope_center(),
            1.5,
            21,
        )?;
        worst = worst.max(dev);
    }
    Ok(CheckResult::from_deviation("wigner-cross-path", worst, 1e-7))
}

/// Signed Wigner volume = 1 for a spot-check parameter point.
fn check_wigner_normalization(points: &[OraclePoint]) -> Result<CheckResult> {
    let mut worst: f64 = 0.0;
    for p in points.iter().take(2) {
        let params = p.params;
        let region = PhaseSpaceRegion::for_params(&params, 0.04);
        let res = negativity_volume(move |b| wigner_closed(b, &params), &region)?;
        worst = worst.max((res.signed_integral - 1.0).abs());
    }
    Ok(CheckResult::from_deviation("wigner-normalization", worst, 1e-6))
}

/// Run the whole analytic-vs-oracle suite. Hard failures (truncation,
/// degenerate herald) propagate as errors; metric disagreements come back
/// as failed [`CheckResult`]s.
pub fn run_suite(opts: &VerifyOptions) -> Result<Vec<CheckResult>> {
    let points = oracle_grid(opts)?;
    let mut results = vec![
        check_equivalence(&points, opts.fidelity_tol),
        check_probabilities(&points, 1e-9),
        check_moments(&points, 1e-9),
        check_pnd_normalization(&points),
        check_uncertainty(&points),
    ];
    results.push(check_wigner(&points)?);
    results.push(check_wigner_normalization(&points)?);
    Ok(results)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_suite_passes() {
        let opts = VerifyOptions {
            alphas: vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 1.0)],
            lambdas: vec![0.3, 0.7],
            ..VerifyOptions::default()
        };
        let results = run_suite(&opts).unwrap();
        for r in &results {
            assert!(r.passed, "{}: {}", r.name, r.detail);
        }
    }

    #[test]
    fn tampered_wigner_evaluator_is_caught() {
        let params = CatalysisParams::new(Complex64::new(1.0, 0.0), 0.5).unwrap();
        let state = crate::analytic::spccs_coefficients(&params, params.default_n_max()).omega;
        // flip the sign of the cross term in F
        let broken = move |beta: Complex64| {
            let l = params.lambda;
            let x = params.alpha.norm_sqr();
            let cross = 2.0 * (params.alpha * beta.conj()).re;
            let f = (1.0 - l) - l * (3.0 * l - 2.0) * x
                + l * l * (1.0 - l) * x * x
                + 4.0 * l * l * x * beta.norm_sqr()
                + 2.0 * l * (1.0 - l).sqrt() * (1.0 + l * x) * cross;
            std::f64::consts::FRAC_2_PI * f / crate::analytic::i0(params.alpha, l)
                * (-2.0 * (beta - params.envelope_center()).norm_sqr()).exp()
        };
        let r = wigner_cross_check(broken, &state, params.envelope_center(), 1.5, 11, 1e-7)
            .unwrap();
        assert!(!r.passed);
    }

    #[test]
    fn degenerate_grid_point_propagates_as_error() {
        let opts = VerifyOptions {
            alphas: vec![Complex64::default()],
            lambdas: vec![1.0],
            device: Some(DeviceKind::BeamSplitter),
            ..VerifyOptions::default()
        };
        assert!(matches!(
            run_suite(&opts),
            Err(crate::error::Error::DegenerateHerald { .. })
        ));
    }
}
