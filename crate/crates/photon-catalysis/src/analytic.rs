//! Closed-form characterization of single-photon catalyzed coherent states:
//! Fock coefficients, heralding probabilities, the moment polynomials
//! I₀…I₄, Mandel Q, g²(0), quadrature variances with dB squeezing, and the
//! phase-space (Wigner) distribution.
//!
//! The catalyzed state is fully specified by the input amplitude α and the
//! catalysis parameter Λ = sin²θ = tanh²λ. At Λ = 0 it reduces to |α⟩, at
//! Λ = 1 to the single-photon state |1⟩.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{adaptive_coherent_truncation, FockVector};
use crate::math::ln_factorial;

/// Input amplitude and catalysis parameter of a catalyzed state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatalysisParams {
    pub alpha: Complex64,
    pub lambda: f64,
}

impl CatalysisParams {
    pub fn new(alpha: Complex64, lambda: f64) -> Result<Self> {
        if !alpha.re.is_finite() || !alpha.im.is_finite() {
            return Err(Error::InvalidParameter(format!("non-finite amplitude {alpha}")));
        }
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::InvalidParameter(format!(
                "catalysis parameter {lambda} outside [0, 1]"
            )));
        }
        Ok(CatalysisParams { alpha, lambda })
    }

    /// Center of the state's Gaussian envelope in phase space, √(1−Λ)·α.
    pub fn envelope_center(&self) -> Complex64 {
        (1.0 - self.lambda).sqrt() * self.alpha
    }

    /// Number-basis window that holds the state to well below 1e-12.
    pub fn default_n_max(&self) -> usize {
        adaptive_coherent_truncation(self.envelope_center()) + 4
    }
}

/// The five quartic moment polynomials in |α|².
///
/// All share the structure c₀ + c₁|α|² + c₂|α|⁴ and are evaluated in
/// Horner form; I₀ doubles as the normalization of the catalyzed state.
pub fn i_k(k: usize, alpha: Complex64, lambda: f64) -> f64 {
    let x = alpha.norm_sqr();
    let l = lambda;
    let (c0, c1, c2) = match k {
        0 => (1.0 - l, l * (3.0 * l - 2.0), l * l * (1.0 - l)),
        1 => (1.0 - 2.0 * l, 2.0 * l * (2.0 * l - 1.0), l * l * (1.0 - l)),
        2 => (1.0 - 3.0 * l, l * (5.0 * l - 2.0), l * l * (1.0 - l)),
        3 => (
            (2.0 * l - 1.0).powi(2),
            l * (1.0 - l) * (5.0 * l - 2.0),
            (l * (1.0 - l)).powi(2),
        ),
        4 => (
            (3.0 * l - 1.0).powi(2),
            l * (1.0 - l) * (7.0 * l - 2.0),
            (l * (1.0 - l)).powi(2),
        ),
        _ => panic!("moment polynomial index {k} outside 0..=4"),
    };
    c0 + x * (c1 + x * c2)
}

/// Normalization polynomial I₀(α, Λ); satisfies I₀(α,0) = 1, I₀(α,1) = |α|².
pub fn i0(alpha: Complex64, lambda: f64) -> f64 {
    i_k(0, alpha, lambda)
}

/// Closed-form description of one catalyzed state: Fock coefficients ωₙ,
/// the coherent / photon-added superposition weights for both devices, and
/// both heralding probabilities.
#[derive(Debug, Clone)]
pub struct AnalyticSpccs {
    pub params: CatalysisParams,
    /// ωₙ = αⁿ e^{−(1−Λ)|α|²/2} (√(1−Λ))^{n−1} (1−Λ−nΛ) / √(n! I₀).
    pub omega: FockVector,
    /// Weights (c₀, c₁) of c₀|tα⟩ + c₁a†|tα⟩ for the beam splitter;
    /// undefined when the herald probability vanishes.
    pub bs_weights: Option<(Complex64, Complex64)>,
    /// Weights (d₀, d₁) of d₀|ϰα⟩ + d₁a†|ϰα⟩ for the amplifier;
    /// undefined at Λ = 1 where the PA herald probability vanishes.
    pub pa_weights: Option<(Complex64, Complex64)>,
    pub p_bs: f64,
    pub p_pa: f64,
}

/// Fock expansion and superposition weights of the catalyzed state.
///
/// Λ = 1 is the exact limit: a bare |1⟩ with phase −α/|α| (−1 for α = 0).
pub fn spccs_coefficients(params: &CatalysisParams, n_max: usize) -> AnalyticSpccs {
    let alpha = params.alpha;
    let l = params.lambda;
    let x = alpha.norm_sqr();

    let omega = if l == 1.0 {
        let mut amps = vec![Complex64::default(); n_max.max(1) + 1];
        amps[1] = if x == 0.0 { -Complex64::ONE } else { -alpha / alpha.norm() };
        FockVector::from_amplitudes(amps)
    } else {
        let norm_i0 = i0(alpha, l);
        let ln_abs_alpha = if x == 0.0 { 0.0 } else { alpha.norm().ln() };
        let amps = (0..=n_max)
            .map(|n| {
                if x == 0.0 && n > 0 {
                    return Complex64::default();
                }
                let ln_mag = n as f64 * ln_abs_alpha - 0.5 * (1.0 - l) * x
                    + 0.5 * (n as f64 - 1.0) * (1.0 - l).ln()
                    - 0.5 * ln_factorial(n)
                    - 0.5 * norm_i0.ln();
                let weight = 1.0 - l - n as f64 * l;
                Complex64::from_polar(ln_mag.exp(), n as f64 * alpha.arg()) * weight
            })
            .collect();
        FockVector::from_amplitudes(amps)
    };

    let p_bs = p_success(params, crate::devices::DeviceKind::BeamSplitter);
    let p_pa = p_success(params, crate::devices::DeviceKind::ParametricAmplifier);
    let envelope = (-0.5 * l * x).exp();
    let t = (1.0 - l).sqrt(); // = ϰ for the amplifier
    let bs_weights = (p_bs > 0.0).then(|| {
        let root = p_bs.sqrt();
        (
            Complex64::new(t * envelope / root, 0.0),
            -alpha * (l * envelope / root),
        )
    });
    let pa_weights = (p_pa > 0.0).then(|| {
        let root = p_pa.sqrt();
        (
            Complex64::new(t * t * envelope / root, 0.0),
            -alpha * (t * l * envelope / root),
        )
    });

    AnalyticSpccs { params: *params, omega, bs_weights, pa_weights, p_bs, p_pa }
}

/// Photon number distribution P(n) = |ωₙ|².
pub fn pnd(params: &CatalysisParams, n_max: usize) -> Vec<f64> {
    spccs_coefficients(params, n_max).omega.pnd()
}

/// Heralding success probability: p_BS = e^{−Λ|α|²} I₀(α, Λ) and
/// p_PA = (1 − Λ)·p_BS.
pub fn p_success(params: &CatalysisParams, kind: crate::devices::DeviceKind) -> f64 {
    let x = params.alpha.norm_sqr();
    let l = params.lambda;
    let p_bs = (-l * x).exp() * i0(params.alpha, l);
    match kind {
        crate::devices::DeviceKind::BeamSplitter => p_bs,
        crate::devices::DeviceKind::ParametricAmplifier => (1.0 - l) * p_bs,
    }
}

/// First and second normally ordered moments plus the derived statistics.
#[derive(Debug, Clone, Copy)]
pub struct MomentSet {
    pub mean_a: Complex64,
    pub mean_a2: Complex64,
    /// ⟨a†a⟩
    pub n_mean: f64,
    /// ⟨a†²a²⟩
    pub n2: f64,
    /// Q = ⟨a†²a²⟩/⟨a†a⟩ − ⟨a†a⟩; `None` at the vacuum-input degenerate
    /// point where ⟨a†a⟩ = 0.
    pub q_mandel: Option<f64>,
    /// g²(0) = ⟨a†²a²⟩/⟨a†a⟩²; `None` on the same degenerate set.
    pub g2: Option<f64>,
    pub var_x: f64,
    pub var_p: f64,
    pub db_x: f64,
    pub db_p: f64,
}

/// Vacuum quadrature variance, the 0 dB reference.
pub const VACUUM_VARIANCE: f64 = 0.5;

fn decibel(var: f64) -> f64 {
    10.0 * (var / VACUUM_VARIANCE).log10()
}

/// Moments from the I-polynomial ratios:
/// ⟨a⟩ = (I₁/I₀)√(1−Λ)α, ⟨a²⟩ = (I₂/I₀)(1−Λ)α²,
/// ⟨a†a⟩ = (I₃/I₀)|α|², ⟨a†²a²⟩ = (I₄/I₀)(1−Λ)|α|⁴,
/// then Q, g²(0) and the quadrature variances
/// ΔX²/ΔP² = ⟨a†a⟩ − |⟨a⟩|² + ½ ± Re(⟨a²⟩ − ⟨a⟩²).
pub fn moments_analytic(params: &CatalysisParams) -> MomentSet {
    let alpha = params.alpha;
    let l = params.lambda;
    if l == 1.0 {
        // exact single-photon limit
        return MomentSet {
            mean_a: Complex64::default(),
            mean_a2: Complex64::default(),
            n_mean: 1.0,
            n2: 0.0,
            q_mandel: Some(-1.0),
            g2: Some(0.0),
            var_x: 1.5,
            var_p: 1.5,
            db_x: decibel(1.5),
            db_p: decibel(1.5),
        };
    }
    let x = alpha.norm_sqr();
    let norm = i0(alpha, l);
    let mean_a = alpha * ((i_k(1, alpha, l) / norm) * (1.0 - l).sqrt());
    let mean_a2 = alpha * alpha * ((i_k(2, alpha, l) / norm) * (1.0 - l));
    let n_mean = (i_k(3, alpha, l) / norm) * x;
    let n2 = (i_k(4, alpha, l) / norm) * (1.0 - l) * x * x;
    let (q_mandel, g2) = if n_mean > 0.0 {
        (Some(n2 / n_mean - n_mean), Some(n2 / (n_mean * n_mean)))
    } else {
        (None, None)
    };
    let spread = n_mean - mean_a.norm_sqr() + 0.5;
    let aniso = (mean_a2 - mean_a * mean_a).re;
    let var_x = spread + aniso;
    let var_p = spread - aniso;
    MomentSet {
        mean_a,
        mean_a2,
        n_mean,
        n2,
        q_mandel,
        g2,
        var_x,
        var_p,
        db_x: decibel(var_x),
        db_p: decibel(var_p),
    }
}

/// Closed-form Wigner function
/// W(β) = (2/π)·F(β)·e^{−2|β − √(1−Λ)α|²} / I₀(α, Λ) with
/// F = (1−Λ) − Λ(3Λ−2)|α|² + Λ²(1−Λ)|α|⁴ + 4Λ²|α|²|β|²
///     − 2Λ√(1−Λ)(1+Λ|α|²)(αβ* + βα*),
/// in the d²β measure where ∫W d²β = 1 and β = (q + ip)/√2.
pub fn wigner_closed(beta: Complex64, params: &CatalysisParams) -> f64 {
    let alpha = params.alpha;
    let l = params.lambda;
    let x = alpha.norm_sqr();
    if x == 0.0 && l == 1.0 {
        // vacuum input at full reflection: bare |1⟩
        let b2 = beta.norm_sqr();
        return std::f64::consts::FRAC_2_PI * (4.0 * b2 - 1.0) * (-2.0 * b2).exp();
    }
    let b2 = beta.norm_sqr();
    let cross = 2.0 * (alpha * beta.conj()).re;
    let f = (1.0 - l) - l * (3.0 * l - 2.0) * x
        + l * l * (1.0 - l) * x * x
        + 4.0 * l * l * x * b2
        - 2.0 * l * (1.0 - l).sqrt() * (1.0 + l * x) * cross;
    let center = params.envelope_center();
    std::f64::consts::FRAC_2_PI * f / i0(alpha, l) * (-2.0 * (beta - center).norm_sqr()).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::devices::DeviceKind;
    use crate::fock::{coherent, moment, TruncationPolicy};
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn params(re: f64, im: f64, l: f64) -> CatalysisParams {
        CatalysisParams::new(c(re, im), l).unwrap()
    }

    #[test]
    fn i0_endpoint_identities() {
        for alpha in [c(0.5, 0.0), c(2.0, 1.0), c(3.0, 0.0)] {
            assert_eq!(i0(alpha, 0.0), 1.0);
            assert_relative_eq!(i0(alpha, 1.0), alpha.norm_sqr(), max_relative = 1e-15);
        }
    }

    #[test]
    fn i3_at_lambda_endpoints_is_one() {
        for alpha in [c(1.0, 0.0), c(2.0, -1.5)] {
            assert_relative_eq!(i_k(3, alpha, 0.0), 1.0, max_relative = 1e-15);
            assert_relative_eq!(i_k(3, alpha, 1.0), 1.0, max_relative = 1e-15);
        }
    }

    #[test]
    fn omega_reduces_to_coherent_at_lambda_zero() {
        let p = params(1.2, 0.8, 0.0);
        let s = spccs_coefficients(&p, 40);
        let reference = coherent(p.alpha, &TruncationPolicy::fixed(40)).unwrap();
        for n in 0..=40 {
            assert_abs_diff_eq!(s.omega.amp(n).re, reference.amp(n).re, epsilon = 1e-12);
            assert_abs_diff_eq!(s.omega.amp(n).im, reference.amp(n).im, epsilon = 1e-12);
        }
    }

    #[test]
    fn omega_reduces_to_fock_one_at_lambda_one() {
        let p = params(1.7, -0.4, 1.0);
        let s = spccs_coefficients(&p, 10);
        assert_abs_diff_eq!(s.omega.amp(1).norm(), 1.0, epsilon = 1e-15);
        let pd = s.omega.pnd();
        assert_eq!(pd[0], 0.0);
        assert!(pd[2..].iter().all(|&p| p == 0.0));
    }

    #[test]
    fn omega_one_vanishes_at_half() {
        let p = params(1.0, 0.0, 0.5);
        let s = spccs_coefficients(&p, 20);
        assert_eq!(s.omega.amp(1), Complex64::default());
    }

    #[test]
    fn omega_is_normalized() {
        for (a, l) in [(c(1.0, 0.0), 0.7), (c(3.0, 0.0), 0.3), (c(1.0, 1.0), 0.9)] {
            let p = CatalysisParams::new(a, l).unwrap();
            let s = spccs_coefficients(&p, p.default_n_max());
            assert_abs_diff_eq!(s.omega.norm_sqr(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn pnd_matches_frozen_reference_distribution() {
        // |α| = 1, Λ = 0.7; values cross-checked against the device oracle
        let p = params(1.0, 0.0, 0.7);
        let dist = pnd(&p, 20);
        assert_abs_diff_eq!(dist[0], 0.429875176411055, epsilon = 1e-12);
        assert_abs_diff_eq!(dist[1], 0.229266760752563, epsilon = 1e-12);
        assert_abs_diff_eq!(dist[2], 0.260074481728688, epsilon = 1e-12);
        assert_abs_diff_eq!(dist[3], 0.069639778578591, epsilon = 1e-12);
        let total: f64 = dist.iter().sum();
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn pnd_poissonian_at_lambda_zero() {
        let p = params(1.0, 0.0, 0.0);
        let dist = pnd(&p, 25);
        for (n, &prob) in dist.iter().enumerate().take(12) {
            let expect = (-1.0f64).exp() / (1..=n).map(|k| k as f64).product::<f64>();
            assert_relative_eq!(prob, expect, max_relative = 1e-10);
        }
    }

    #[test]
    fn success_probabilities() {
        let p = params(0.7, -1.1, 0.0);
        assert_relative_eq!(p_success(&p, DeviceKind::BeamSplitter), 1.0, epsilon = 1e-15);
        assert_relative_eq!(
            p_success(&p, DeviceKind::ParametricAmplifier),
            1.0,
            epsilon = 1e-15
        );

        // swap limit: p_BS = |α|² e^{−|α|²}
        let p = params(1.0, 0.0, 1.0);
        assert_relative_eq!(
            p_success(&p, DeviceKind::BeamSplitter),
            (-1.0f64).exp(),
            max_relative = 1e-14
        );

        // frozen reference value
        let p = params(1.0, 0.0, 0.7);
        assert_abs_diff_eq!(
            p_success(&p, DeviceKind::BeamSplitter),
            0.256734602060159,
            epsilon = 1e-14
        );

        for l in [0.1, 0.4, 0.9] {
            let p = params(1.3, 0.5, l);
            let ratio = p_success(&p, DeviceKind::ParametricAmplifier)
                / p_success(&p, DeviceKind::BeamSplitter);
            assert_abs_diff_eq!(ratio, 1.0 - l, epsilon = 1e-14);
        }
    }

    #[test]
    fn moments_at_lambda_endpoints() {
        let m = moments_analytic(&params(1.4, 0.6, 0.0));
        assert_abs_diff_eq!(m.q_mandel.unwrap(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(m.g2.unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(m.var_x, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(m.var_p, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(m.db_x, 0.0, epsilon = 1e-12);

        let m = moments_analytic(&params(2.0, -1.0, 1.0));
        assert_eq!(m.q_mandel, Some(-1.0));
        assert_eq!(m.g2, Some(0.0));
        assert_eq!(m.var_x, 1.5);
        assert_abs_diff_eq!(m.db_x, 10.0 * 3f64.log10(), epsilon = 1e-12);
    }

    #[test]
    fn largest_squeezing_for_unit_alpha() {
        let m = moments_analytic(&params(1.0, 0.0, 0.322185));
        assert_abs_diff_eq!(m.var_x, 0.375, epsilon = 1e-7);
        assert_abs_diff_eq!(m.db_x, -1.25, epsilon = 1e-2);
    }

    #[test]
    fn frozen_moment_set() {
        // α = 1, Λ = 0.7
        let m = moments_analytic(&params(1.0, 0.0, 0.7));
        assert_abs_diff_eq!(m.n_mean, 1.004061895551258, epsilon = 1e-14);
        assert_abs_diff_eq!(m.q_mandel.unwrap(), 0.072667058407517, epsilon = 1e-13);
        assert_abs_diff_eq!(m.g2.unwrap(), 1.072373086489474, epsilon = 1e-13);
        assert_abs_diff_eq!(m.var_x, 1.348781655810752, epsilon = 1e-13);
        assert_abs_diff_eq!(m.var_p, 1.447775628626693, epsilon = 1e-13);
        assert_abs_diff_eq!(m.db_x, 4.309716463356, epsilon = 1e-10);
    }

    #[test]
    fn moments_agree_with_fock_sum() {
        for (a, l) in [(c(1.0, 0.0), 0.7), (c(2.0, 0.0), 0.25), (c(1.0, 1.0), 0.5)] {
            let p = CatalysisParams::new(a, l).unwrap();
            let m = moments_analytic(&p);
            let s = spccs_coefficients(&p, p.default_n_max());
            let direct_a = moment(&s.omega, 0, 1);
            let direct_a2 = moment(&s.omega, 0, 2);
            let direct_n = moment(&s.omega, 1, 1).re;
            let direct_n2 = moment(&s.omega, 2, 2).re;
            assert_abs_diff_eq!(m.mean_a.re, direct_a.re, epsilon = 1e-9);
            assert_abs_diff_eq!(m.mean_a.im, direct_a.im, epsilon = 1e-9);
            assert_abs_diff_eq!(m.mean_a2.re, direct_a2.re, epsilon = 1e-9);
            assert_abs_diff_eq!(m.mean_a2.im, direct_a2.im, epsilon = 1e-9);
            assert_abs_diff_eq!(m.n_mean, direct_n, epsilon = 1e-9);
            assert_abs_diff_eq!(m.n2, direct_n2, epsilon = 1e-9);
        }
    }

    #[test]
    fn degenerate_vacuum_input_statistics_are_tagged() {
        let m = moments_analytic(&params(0.0, 0.0, 0.0));
        assert_eq!(m.q_mandel, None);
        assert_eq!(m.g2, None);
        let m = moments_analytic(&params(0.0, 0.0, 0.4));
        assert_eq!(m.q_mandel, None);
    }

    #[test]
    fn interior_antisqueezing_at_inverse_intensity() {
        for alpha in [2.0, 3.0] {
            let m = moments_analytic(&params(alpha, 0.0, 1.0 / (alpha * alpha)));
            assert_abs_diff_eq!(m.var_x, 1.5, epsilon = 1e-12);
        }
    }

    #[test]
    fn wigner_closed_limits() {
        let p = params(1.1, 0.4, 0.0);
        for beta in [c(0.0, 0.0), c(1.0, 0.5), c(-0.3, 1.2)] {
            let expect = std::f64::consts::FRAC_2_PI
                * (-2.0 * (beta - p.alpha).norm_sqr()).exp();
            assert_relative_eq!(wigner_closed(beta, &p), expect, max_relative = 1e-12);
        }

        let p = params(1.7, -0.8, 1.0);
        for beta in [c(0.0, 0.0), c(0.4, 0.2)] {
            let b2 = beta.norm_sqr();
            let expect =
                std::f64::consts::FRAC_2_PI * (4.0 * b2 - 1.0) * (-2.0 * b2).exp();
            assert_relative_eq!(wigner_closed(beta, &p), expect, max_relative = 1e-11);
        }

        // printed single-photon minimum at the origin
        assert_relative_eq!(
            wigner_closed(c(0.0, 0.0), &params(0.0, 0.0, 1.0)),
            -std::f64::consts::FRAC_2_PI,
            max_relative = 1e-15
        );
    }

    #[test]
    fn metrics_continuous_into_lambda_one() {
        let near = moments_analytic(&params(1.3, 0.0, 1.0 - 1e-8));
        let exact = moments_analytic(&params(1.3, 0.0, 1.0));
        assert_abs_diff_eq!(near.q_mandel.unwrap(), exact.q_mandel.unwrap(), epsilon = 1e-5);
        assert_abs_diff_eq!(near.g2.unwrap(), exact.g2.unwrap(), epsilon = 1e-5);
        assert_abs_diff_eq!(near.var_x, exact.var_x, epsilon = 1e-5);
        assert_abs_diff_eq!(near.n_mean, exact.n_mean, epsilon = 1e-5);
    }

    #[test]
    fn phase_rotation_leaves_scalar_statistics_unchanged() {
        let base = params(1.4, 0.0, 0.6);
        let rot = CatalysisParams::new(Complex64::from_polar(1.4, 2.1), 0.6).unwrap();
        let (m0, m1) = (moments_analytic(&base), moments_analytic(&rot));
        assert_abs_diff_eq!(m0.q_mandel.unwrap(), m1.q_mandel.unwrap(), epsilon = 1e-12);
        assert_abs_diff_eq!(m0.g2.unwrap(), m1.g2.unwrap(), epsilon = 1e-12);
        assert_abs_diff_eq!(
            p_success(&base, DeviceKind::BeamSplitter),
            p_success(&rot, DeviceKind::BeamSplitter),
            epsilon = 1e-15
        );
        let (p0, p1) = (pnd(&base, 30), pnd(&rot, 30));
        for (a, b) in p0.iter().zip(&p1) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-12);
        }
    }
}
