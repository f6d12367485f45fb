//! Parameter sweeps over (α, Λ), statistical-regime classification, and
//! one-dimensional extremum location on a caller-supplied bracket.

use num_complex::Complex64;

use crate::analytic::{moments_analytic, p_success, pnd, wigner_closed, CatalysisParams};
use crate::devices::DeviceKind;
use crate::error::{Error, Result};
use crate::math::positive_finite;
use crate::phase_space::{negativity_volume, PhaseSpaceRegion, DEFAULT_GRID_STEP};

/// Scalar figures of merit a sweep or extremum search can target.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    MandelQ,
    G2,
    VarX,
    DbX,
    Delta,
    PBs,
    PPa,
    /// Photon-number distribution; sweeps emit one row per n.
    Pnd,
}

impl Metric {
    pub fn label(&self) -> &'static str {
        match self {
            Metric::MandelQ => "q",
            Metric::G2 => "g2",
            Metric::VarX => "var_x",
            Metric::DbX => "db_x",
            Metric::Delta => "delta",
            Metric::PBs => "p_bs",
            Metric::PPa => "p_pa",
            Metric::Pnd => "pnd",
        }
    }

    pub fn parse(s: &str) -> Result<Metric> {
        Ok(match s {
            "q" => Metric::MandelQ,
            "g2" => Metric::G2,
            "var_x" => Metric::VarX,
            "db_x" => Metric::DbX,
            "delta" => Metric::Delta,
            "p_bs" => Metric::PBs,
            "p_pa" => Metric::PPa,
            "pnd" => Metric::Pnd,
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown metric '{other}' (expected q|g2|var_x|db_x|delta|p_bs|p_pa|pnd)"
                )))
            }
        })
    }

    /// Quadrature variances are direction-sensitive, so their sweeps fix
    /// α real and nonnegative.
    fn requires_real_alpha(&self) -> bool {
        matches!(self, Metric::VarX | Metric::DbX)
    }
}

/// A dense sweep request: one row per (α, Λ) grid point.
#[derive(Debug, Clone)]
pub struct ScanRequest {
    pub metric: Metric,
    pub alphas: Vec<Complex64>,
    pub lambda_lo: f64,
    pub lambda_hi: f64,
    pub lambda_step: f64,
    /// Quadrature resolution for δ sweeps.
    pub grid_step: f64,
}

impl ScanRequest {
    pub fn new(metric: Metric, alphas: Vec<Complex64>, lo: f64, hi: f64, step: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) || lo > hi {
            return Err(Error::InvalidParameter(format!(
                "catalysis range [{lo}, {hi}] must sit inside [0, 1]"
            )));
        }
        if !positive_finite(step) {
            return Err(Error::InvalidParameter(format!("step {step} must be positive")));
        }
        if alphas.is_empty() {
            return Err(Error::InvalidParameter("at least one alpha required".into()));
        }
        if metric.requires_real_alpha() {
            for a in &alphas {
                if a.im != 0.0 || a.re < 0.0 {
                    return Err(Error::InvalidParameter(format!(
                        "metric {} requires real nonnegative alpha, got {a}",
                        metric.label()
                    )));
                }
            }
        }
        Ok(ScanRequest {
            metric,
            alphas,
            lambda_lo: lo,
            lambda_hi: hi,
            lambda_step: step,
            grid_step: DEFAULT_GRID_STEP,
        })
    }

    pub fn lambda_grid(&self) -> Vec<f64> {
        let mut grid = Vec::new();
        let mut k = 0usize;
        loop {
            let l = self.lambda_lo + k as f64 * self.lambda_step;
            if l > self.lambda_hi + 1e-12 {
                break;
            }
            grid.push(l.min(1.0));
            k += 1;
        }
        grid
    }
}

/// One sweep sample. `n` is populated only for PND sweeps.
#[derive(Debug, Clone)]
pub struct ScanRow {
    pub alpha: Complex64,
    pub lambda: f64,
    pub n: Option<usize>,
    pub value: f64,
    pub classification: &'static str,
}

fn classify(metric: Metric, value: f64) -> &'static str {
    match metric {
        Metric::MandelQ => {
            if value < 0.0 {
                "sub-poissonian"
            } else if value > 0.0 {
                "super-poissonian"
            } else {
                "boundary"
            }
        }
        Metric::G2 => {
            if value < 1.0 {
                "antibunching"
            } else if value > 2.0 {
                "superbunching"
            } else {
                "bunching"
            }
        }
        Metric::VarX => {
            if value < 0.5 {
                "squeezed"
            } else if value > 0.5 {
                "unsqueezed"
            } else {
                "boundary"
            }
        }
        Metric::DbX => {
            if value < 0.0 {
                "squeezed"
            } else if value > 0.0 {
                "unsqueezed"
            } else {
                "boundary"
            }
        }
        _ => "",
    }
}

/// Evaluate one scalar metric at a single parameter point. Values come
/// straight from the closed forms: a sweep applies no transformation.
pub fn metric_value(metric: Metric, alpha: Complex64, lambda: f64, grid_step: f64) -> Result<f64> {
    let params = CatalysisParams::new(alpha, lambda)?;
    Ok(match metric {
        Metric::MandelQ => moments_analytic(&params).q_mandel.unwrap_or(f64::NAN),
        Metric::G2 => moments_analytic(&params).g2.unwrap_or(f64::NAN),
        Metric::VarX => moments_analytic(&params).var_x,
        Metric::DbX => moments_analytic(&params).db_x,
        Metric::PBs => p_success(&params, DeviceKind::BeamSplitter),
        Metric::PPa => p_success(&params, DeviceKind::ParametricAmplifier),
        Metric::Delta => {
            let region = PhaseSpaceRegion::for_params(&params, grid_step);
            negativity_volume(|b| wigner_closed(b, &params), &region)?.delta
        }
        Metric::Pnd => {
            return Err(Error::InvalidParameter(
                "pnd is a distribution; use scan_metric".into(),
            ))
        }
    })
}

/// Dense sweep over the requested grid, row order (α outer, Λ inner, n
/// innermost for PND).
pub fn scan_metric(request: &ScanRequest) -> Result<Vec<ScanRow>> {
    let lambdas = request.lambda_grid();
    let mut rows = Vec::new();
    for &alpha in &request.alphas {
        for &lambda in &lambdas {
            if request.metric == Metric::Pnd {
                let params = CatalysisParams::new(alpha, lambda)?;
                let dist = pnd(&params, params.default_n_max());
                for (n, p) in dist.into_iter().enumerate() {
                    rows.push(ScanRow {
                        alpha,
                        lambda,
                        n: Some(n),
                        value: p,
                        classification: "",
                    });
                }
            } else {
                let value = metric_value(request.metric, alpha, lambda, request.grid_step)?;
                rows.push(ScanRow {
                    alpha,
                    lambda,
                    n: None,
                    value,
                    classification: classify(request.metric, value),
                });
            }
        }
    }
    Ok(rows)
}

/// Whether the search targets a minimum or a maximum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremumKind {
    Min,
    Max,
}

impl ExtremumKind {
    pub fn label(&self) -> &'static str {
        match self {
            ExtremumKind::Min => "min",
            ExtremumKind::Max => "max",
        }
    }
}

/// Outcome of a golden-section refinement.
#[derive(Debug, Clone)]
pub struct ExtremumResult {
    pub lambda_star: f64,
    /// metric(lambda_star), evaluated at the returned point.
    pub value: f64,
    pub kind: ExtremumKind,
    pub bracket: (f64, f64),
    pub tolerance_achieved: f64,
}

/// Golden-section search for an interior extremum of `metric` over Λ in
/// `bracket` at fixed α, shrinking the bracket below `tol`.
///
/// The bracket must be unimodal with the extremum inside; a three-point
/// violation (no interior sample beats both ends) is rejected.
pub fn find_extremum(
    metric: Metric,
    alpha: Complex64,
    bracket: (f64, f64),
    kind: ExtremumKind,
    tol: f64,
) -> Result<ExtremumResult> {
    find_extremum_with(
        |l| metric_value(metric, alpha, l, DEFAULT_GRID_STEP),
        bracket,
        kind,
        tol,
    )
}

/// Same search over an arbitrary objective.
pub fn find_extremum_with<F>(
    mut objective: F,
    bracket: (f64, f64),
    kind: ExtremumKind,
    tol: f64,
) -> Result<ExtremumResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (lo, hi) = bracket;
    let bracket_ok = lo.is_finite() && hi.is_finite() && lo < hi;
    if !bracket_ok {
        return Err(Error::InvalidParameter(format!("empty bracket [{lo}, {hi}]")));
    }
    if !positive_finite(tol) {
        return Err(Error::InvalidParameter(format!("tolerance {tol} must be positive")));
    }
    let sign = match kind {
        ExtremumKind::Min => 1.0,
        ExtremumKind::Max => -1.0,
    };
    let mut eval = |l: f64| objective(l).map(|v| sign * v);

    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = eval(x1)?;
    let mut f2 = eval(x2)?;
    let (fa, fb) = (eval(a)?, eval(b)?);

    while b - a > tol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = eval(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = eval(x2)?;
        }
    }
    let (lambda_star, best) = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    // three-point violation: a bracket endpoint beats every interior sample,
    // so the extremum the caller asked for is not inside the bracket
    if best - fa.min(fb) > 1e-10 * (1.0 + best.abs()) {
        return Err(Error::BracketNotUnimodal { lo, hi });
    }
    Ok(ExtremumResult {
        lambda_star,
        value: sign * best,
        kind,
        bracket,
        tolerance_achieved: b - a,
    })
}
