//! Exact truncated-Fock-space action of the beam splitter and the two-mode
//! squeezer, plus single-photon heralding. This is the brute-force oracle
//! every closed form in [`crate::analytic`] is checked against.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{coherent, fock, tensor, FockVector, TruncationPolicy, TwoModeFockMatrix};
use crate::math::ln_factorial;

/// Hard ceiling on a two-mode squeezer's output truncation. Beyond this the
/// application fails rather than silently spilling.
pub const PA_TRUNCATION_CAP: usize = 1024;

/// Which optical device performs the catalysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeviceKind {
    BeamSplitter,
    ParametricAmplifier,
}

impl DeviceKind {
    pub fn label(&self) -> &'static str {
        match self {
            DeviceKind::BeamSplitter => "bs",
            DeviceKind::ParametricAmplifier => "pa",
        }
    }
}

/// A device with its native interaction strength: mixing angle θ ∈ [0, π/2]
/// for the beam splitter, squeezing parameter λ ≥ 0 for the amplifier.
/// Both map onto the catalysis parameter Λ = sin²θ = tanh²λ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviceSpec {
    pub kind: DeviceKind,
    pub interaction: f64,
}

impl DeviceSpec {
    pub fn new(kind: DeviceKind, interaction: f64) -> Result<Self> {
        match kind {
            DeviceKind::BeamSplitter => {
                if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&interaction) {
                    return Err(Error::InvalidParameter(format!(
                        "beam splitter angle {interaction} outside [0, pi/2]"
                    )));
                }
            }
            DeviceKind::ParametricAmplifier => {
                if !interaction.is_finite() || interaction < 0.0 {
                    return Err(Error::InvalidParameter(format!(
                        "squeezing parameter {interaction} must be finite and nonnegative"
                    )));
                }
            }
        }
        Ok(DeviceSpec { kind, interaction })
    }

    /// Device realizing catalysis parameter Λ: θ = asin√Λ or λ = atanh√Λ.
    pub fn from_catalysis(kind: DeviceKind, lambda_cat: f64) -> Result<Self> {
        let ok = match kind {
            DeviceKind::BeamSplitter => (0.0..=1.0).contains(&lambda_cat),
            DeviceKind::ParametricAmplifier => (0.0..1.0).contains(&lambda_cat),
        };
        if !ok {
            return Err(Error::InvalidParameter(format!(
                "catalysis parameter {lambda_cat} outside [0, 1] ({} requires Λ < 1)",
                kind.label()
            )));
        }
        let interaction = match kind {
            DeviceKind::BeamSplitter => lambda_cat.sqrt().asin(),
            DeviceKind::ParametricAmplifier => lambda_cat.sqrt().atanh(),
        };
        Self::new(kind, interaction)
    }

    /// Λ = sin²θ (BS) or tanh²λ (PA).
    pub fn catalysis_parameter(&self) -> f64 {
        match self.kind {
            DeviceKind::BeamSplitter => self.interaction.sin().powi(2),
            DeviceKind::ParametricAmplifier => self.interaction.tanh().powi(2),
        }
    }
}

/// Conditional output of a heralded measurement.
#[derive(Debug, Clone)]
pub struct HeraldResult {
    /// Normalized mode-a state conditioned on the herald.
    pub state: FockVector,
    /// Squared norm of the projected (pre-normalization) vector.
    pub probability: f64,
}

/// B(θ) = exp[θ(a†b − ab†)] applied exactly, basis state by basis state,
/// through the binomial expansion of
/// B|p,q⟩ = (a†t − b†r)ᵖ(a†r + b†t)^q / √(p!q!) |0,0⟩ with t = cosθ, r = sinθ.
/// Total photon number is conserved so the output never spills.
pub fn bs_apply(input: &TwoModeFockMatrix, theta: f64) -> TwoModeFockMatrix {
    let t = theta.cos();
    let r = theta.sin();
    let (na, nb) = (input.trunc_a(), input.trunc_b());
    let total = na + nb;
    let mut out = TwoModeFockMatrix::zeros(total, total);

    // ln x with a guard so a zero base simply kills the term
    let pow_ln = |base: f64, e: usize| -> Option<f64> {
        if e == 0 {
            Some(0.0)
        } else if base == 0.0 {
            None
        } else {
            Some(e as f64 * base.ln())
        }
    };

    for p in 0..=na {
        for q in 0..=nb {
            let g = input.amp(p, q);
            if g.norm_sqr() == 0.0 {
                continue;
            }
            let ln_in = 0.5 * (ln_factorial(p) + ln_factorial(q));
            for i in 0..=p {
                for j in 0..=q {
                    let ma = i + j; // output photons in mode a
                    let mb = p + q - ma;
                    let (et, er) = (i + q - j, p - i + j);
                    let (Some(lt), Some(lr)) = (pow_ln(t, et), pow_ln(r, er)) else {
                        continue;
                    };
                    let ln_c = ln_factorial(p) - ln_factorial(i) - ln_factorial(p - i)
                        + ln_factorial(q)
                        - ln_factorial(j)
                        - ln_factorial(q - j)
                        + 0.5 * (ln_factorial(ma) + ln_factorial(mb))
                        - ln_in
                        + lt
                        + lr;
                    let sign = if (p - i) % 2 == 0 { 1.0 } else { -1.0 };
                    out.add(ma, mb, g * (sign * ln_c.exp()));
                }
            }
        }
    }
    out
}

/// Output of [`pa_apply`]: the truncated two-mode state plus the probability
/// mass the pair-creation series pushed beyond the retained grid.
#[derive(Debug, Clone)]
pub struct PaApplied {
    pub state: TwoModeFockMatrix,
    pub spill_mass: f64,
}

/// S(λ) = exp[λ(a†b† − ab)] through its normally ordered factorization
/// e^{κ a†b†} · e^{−(a†a + b†b + 1) ln coshλ} · e^{−κ ab} with κ = tanhλ.
///
/// The e^{−κab} series terminates inside the input grid; the e^{κa†b†}
/// series is cut once both modes have grown by a pair budget G. G starts at
/// ⌈10/(1−Λ)⌉ and grows geometrically until the spilled mass drops below
/// `spill_tol`, capped so no mode exceeds [`PA_TRUNCATION_CAP`].
pub fn pa_apply(input: &TwoModeFockMatrix, lambda: f64, spill_tol: f64) -> Result<PaApplied> {
    if !lambda.is_finite() || lambda < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "squeezing parameter {lambda} must be finite and nonnegative"
        )));
    }
    if lambda == 0.0 {
        return Ok(PaApplied { state: input.clone(), spill_mass: 0.0 });
    }
    let kappa = lambda.tanh();
    let ln_ch = lambda.cosh().ln();
    let cat = kappa * kappa;
    let (na, nb) = (input.trunc_a(), input.trunc_b());
    let norm_in = input.norm_sqr();

    // e^{-kappa ab}: terminating series inside the input grid
    let mut down = TwoModeFockMatrix::zeros(na, nb);
    for m in 0..=na {
        for n in 0..=nb {
            let mut acc = Complex64::default();
            for j in 0..=(na - m).min(nb - n) {
                let src = input.amp(m + j, n + j);
                if src.norm_sqr() == 0.0 {
                    continue;
                }
                let ln_c = 0.5
                    * (ln_factorial(m + j) + ln_factorial(n + j)
                        - ln_factorial(m)
                        - ln_factorial(n))
                    - ln_factorial(j);
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                acc += src * (sign * (j as f64 * kappa.ln() + ln_c).exp());
            }
            down.set(m, n, acc);
        }
    }

    let growth_cap = PA_TRUNCATION_CAP.saturating_sub(na.max(nb));
    let mut budget = (10.0 / (1.0 - cat)).ceil() as usize;
    loop {
        let g = budget.min(growth_cap);
        let mut out = TwoModeFockMatrix::zeros(na + g, nb + g);
        // e^{kappa a†b†} with the diagonal sech factor folded per source cell;
        // only the band |M − N| ≤ na + nb is reachable from the input grid.
        for big_m in 0..=(na + g) {
            let lo_n = big_m.saturating_sub(na);
            let hi_n = (big_m + nb).min(nb + g);
            for big_n in lo_n..=hi_n {
                let j_lo = big_m.saturating_sub(na).max(big_n.saturating_sub(nb));
                let j_hi = big_m.min(big_n);
                let mut acc = Complex64::default();
                for j in j_lo..=j_hi {
                    let (m, n) = (big_m - j, big_n - j);
                    let src = down.amp(m, n);
                    if src.norm_sqr() == 0.0 {
                        continue;
                    }
                    let ln_c = j as f64 * kappa.ln()
                        + 0.5
                            * (ln_factorial(big_m) + ln_factorial(big_n)
                                - ln_factorial(m)
                                - ln_factorial(n))
                        - ln_factorial(j)
                        - (m + n + 1) as f64 * ln_ch;
                    acc += src * ln_c.exp();
                }
                if acc.norm_sqr() > 0.0 {
                    out.set(big_m, big_n, acc);
                }
            }
        }
        let spill = (norm_in - out.norm_sqr()).max(0.0);
        if spill <= spill_tol {
            return Ok(PaApplied { state: out, spill_mass: spill });
        }
        if g >= growth_cap {
            return Err(Error::Truncation { tail: spill, tol: spill_tol, lambda: Some(cat) });
        }
        budget = ((g as f64 * 1.6).ceil() as usize).max(g + 8);
    }
}

/// Project onto a single photon in mode b and renormalize:
/// v[n_a] = ⟨n_a, 1|ψ⟩, probability = Σ|v|², state = v/√probability.
pub fn herald_single_photon(state: &TwoModeFockMatrix) -> Result<HeraldResult> {
    if state.trunc_b() < 1 {
        return Err(Error::DegenerateHerald { probability: 0.0 });
    }
    let projected = state.mode_b_slice(1);
    let probability = projected.norm_sqr();
    if probability < 1e-300 {
        return Err(Error::DegenerateHerald { probability });
    }
    Ok(HeraldResult { state: projected.normalized(), probability })
}

/// Full numeric catalysis: prepare |α⟩ ⊗ |1⟩, run it through the device at
/// catalysis parameter Λ, herald a single photon in mode b.
pub fn catalyze_numeric(
    alpha: Complex64,
    lambda_cat: f64,
    kind: DeviceKind,
    policy: &TruncationPolicy,
) -> Result<HeraldResult> {
    let device = DeviceSpec::from_catalysis(kind, lambda_cat)?;
    // vacuum input at full reflection: the herald can never fire, and the
    // numeric path would otherwise normalize pure rounding residue
    if crate::analytic::i0(alpha, lambda_cat) == 0.0 {
        return Err(Error::DegenerateHerald { probability: 0.0 });
    }
    let mode_a = coherent(alpha, policy)?;
    let mode_b = fock(1, &TruncationPolicy::fixed(1))?;
    let joint = tensor(&mode_a, &mode_b);
    let output = match device.kind {
        DeviceKind::BeamSplitter => bs_apply(&joint, device.interaction),
        DeviceKind::ParametricAmplifier => {
            pa_apply(&joint, device.interaction, policy.tail_tol())?.state
        }
    };
    herald_single_photon(&output)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{inner, moment};
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn coherent_fock1(alpha: Complex64) -> TwoModeFockMatrix {
        let a = coherent(alpha, &TruncationPolicy::adaptive()).unwrap();
        let b = fock(1, &TruncationPolicy::fixed(1)).unwrap();
        tensor(&a, &b)
    }

    #[test]
    fn bs_theta_zero_is_identity() {
        let input = coherent_fock1(c(1.3, 0.7));
        let out = bs_apply(&input, 0.0);
        for m in 0..=input.trunc_a() {
            for n in 0..=input.trunc_b() {
                let d = (out.amp(m, n) - input.amp(m, n)).norm();
                assert!(d < 1e-13, "({m},{n}) differs by {d}");
            }
        }
    }

    #[test]
    fn bs_half_pi_swaps_modes_with_sign() {
        // B|p,q⟩ → (−1)^p |q,p⟩ at t = 0, r = 1
        let mut input = TwoModeFockMatrix::zeros(3, 3);
        input.set(2, 1, c(1.0, 0.0));
        let out = bs_apply(&input, std::f64::consts::FRAC_PI_2);
        assert_abs_diff_eq!(out.amp(1, 2).re, 1.0, epsilon = 1e-12);
        for m in 0..=3 {
            for n in 0..=3 {
                if (m, n) != (1, 2) {
                    assert!(out.amp(m, n).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn hong_ou_mandel_dip() {
        // 50:50 on |1,1⟩ → (|2,0⟩ − |0,2⟩)/√2
        let mut input = TwoModeFockMatrix::zeros(1, 1);
        input.set(1, 1, c(1.0, 0.0));
        let out = bs_apply(&input, std::f64::consts::FRAC_PI_4);
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        assert_abs_diff_eq!(out.amp(2, 0).re, inv_sqrt2, epsilon = 1e-12);
        assert_abs_diff_eq!(out.amp(0, 2).re, -inv_sqrt2, epsilon = 1e-12);
        assert!(out.amp(1, 1).norm() < 1e-12);
    }

    #[test]
    fn bs_preserves_norm_and_photon_number() {
        let input = coherent_fock1(c(1.5, -0.4));
        let out = bs_apply(&input, 0.9);
        assert_abs_diff_eq!(out.norm_sqr(), input.norm_sqr(), epsilon = 1e-10);
        assert_abs_diff_eq!(
            out.total_photon_mean(),
            input.total_photon_mean(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn pa_lambda_zero_is_identity() {
        let input = coherent_fock1(c(0.9, 0.2));
        let out = pa_apply(&input, 0.0, 1e-12).unwrap();
        assert_eq!(out.spill_mass, 0.0);
        assert_eq!(out.state, input);
    }

    #[test]
    fn pa_on_vacuum_is_two_mode_squeezed_vacuum() {
        let vac = TwoModeFockMatrix::zeros(0, 0);
        let mut input = vac.clone();
        input.set(0, 0, c(1.0, 0.0));
        for lambda in [0.4, 0.8, 1.5] {
            let out = pa_apply(&input, lambda, 1e-12).unwrap();
            let sech = 1.0 / lambda.cosh();
            let th = lambda.tanh();
            for n in 0..=out.state.trunc_a().min(40) {
                let expect = sech * th.powi(n as i32);
                assert_abs_diff_eq!(out.state.amp(n, n).re, expect, epsilon = 1e-10);
                assert_abs_diff_eq!(out.state.amp(n, n).im, 0.0, epsilon = 1e-14);
            }
            assert!(out.spill_mass <= 1e-12);
        }
    }

    #[test]
    fn pa_unitarity_at_half_catalysis() {
        let input = coherent_fock1(c(1.0, 0.0));
        let lambda = 0.5f64.sqrt().atanh();
        let out = pa_apply(&input, lambda, 1e-12).unwrap();
        assert_abs_diff_eq!(out.state.norm_sqr(), 1.0, epsilon = 1e-9);
    }

    #[test]
    fn pa_truncation_cap_error_carries_lambda() {
        let input = coherent_fock1(c(1.0, 0.0));
        let lambda = 0.999f64.sqrt().atanh();
        let err = pa_apply(&input, lambda, 1e-12).unwrap_err();
        match err {
            Error::Truncation { lambda: Some(l), .. } => {
                assert_relative_eq!(l, 0.999, max_relative = 1e-10)
            }
            other => panic!("expected truncation error, got {other:?}"),
        }
    }

    #[test]
    fn herald_without_device_returns_input_coherent() {
        let alpha = c(0.8, -0.3);
        let joint = coherent_fock1(alpha);
        let h = herald_single_photon(&joint).unwrap();
        assert_abs_diff_eq!(h.probability, 1.0, epsilon = 1e-12);
        let reference = coherent(alpha, &TruncationPolicy::adaptive()).unwrap();
        assert!(h.state.fidelity(&reference) >= 1.0 - 1e-12);
    }

    #[test]
    fn herald_on_double_vacuum_is_degenerate() {
        let f0 = fock(0, &TruncationPolicy::fixed(0)).unwrap();
        let joint = tensor(&f0, &f0);
        assert!(matches!(
            herald_single_photon(&joint),
            Err(Error::DegenerateHerald { .. })
        ));
        let f0b = fock(0, &TruncationPolicy::fixed(1)).unwrap();
        let joint = tensor(&f0, &f0b);
        assert!(matches!(
            herald_single_photon(&joint),
            Err(Error::DegenerateHerald { .. })
        ));
    }

    #[test]
    fn herald_in_swap_limit_gives_single_photon() {
        let alpha = c(1.0, 0.0);
        let joint = coherent_fock1(alpha);
        let out = bs_apply(&joint, std::f64::consts::FRAC_PI_2);
        let h = herald_single_photon(&out).unwrap();
        // p = |α|² e^{−|α|²} = e^{−1} at α = 1
        assert_abs_diff_eq!(h.probability, (-1.0f64).exp(), epsilon = 1e-12);
        let f1 = fock(1, &TruncationPolicy::adaptive()).unwrap();
        assert!(h.state.fidelity(&f1) >= 1.0 - 1e-12);
    }

    #[test]
    fn catalyze_identity_device() {
        let h = catalyze_numeric(
            c(1.0, 0.0),
            0.0,
            DeviceKind::BeamSplitter,
            &TruncationPolicy::adaptive(),
        )
        .unwrap();
        assert_abs_diff_eq!(h.probability, 1.0, epsilon = 1e-12);
        let reference = coherent(c(1.0, 0.0), &TruncationPolicy::adaptive()).unwrap();
        assert!(h.state.fidelity(&reference) >= 1.0 - 1e-12);
    }

    #[test]
    fn catalyze_full_reflection_gives_fock_one() {
        let h = catalyze_numeric(
            c(1.7, 0.4),
            1.0,
            DeviceKind::BeamSplitter,
            &TruncationPolicy::adaptive(),
        )
        .unwrap();
        let f1 = fock(1, &TruncationPolicy::adaptive()).unwrap();
        assert!(h.state.fidelity(&f1) >= 1.0 - 1e-12);
    }

    #[test]
    fn herald_probability_matches_closed_form() {
        let policy = TruncationPolicy::adaptive();
        let alpha = c(1.0, 0.0);
        for k in 1..=9 {
            let lc = k as f64 / 10.0;
            let params = crate::analytic::CatalysisParams::new(alpha, lc).unwrap();
            let h = catalyze_numeric(alpha, lc, DeviceKind::BeamSplitter, &policy).unwrap();
            let closed = crate::analytic::p_success(&params, DeviceKind::BeamSplitter);
            assert_abs_diff_eq!(h.probability, closed, epsilon = 1e-10);
        }
    }

    #[test]
    fn catalyzed_state_matches_analytic_coefficients() {
        let h = catalyze_numeric(
            c(1.0, 0.0),
            0.7,
            DeviceKind::BeamSplitter,
            &TruncationPolicy::adaptive(),
        )
        .unwrap();
        let params = crate::analytic::CatalysisParams::new(c(1.0, 0.0), 0.7).unwrap();
        let omega = crate::analytic::spccs_coefficients(&params, params.default_n_max()).omega;
        assert!(h.state.fidelity(&omega) >= 1.0 - 1e-10);
    }

    #[test]
    fn bs_and_pa_agree_pointwise() {
        let policy = TruncationPolicy::adaptive();
        for lc in [0.2, 0.6] {
            let bs = catalyze_numeric(c(1.0, 1.0), lc, DeviceKind::BeamSplitter, &policy).unwrap();
            let pa =
                catalyze_numeric(c(1.0, 1.0), lc, DeviceKind::ParametricAmplifier, &policy)
                    .unwrap();
            assert!(bs.state.fidelity(&pa.state) >= 1.0 - 1e-10);
            // p_PA/p_BS = 1 − Λ
            assert_relative_eq!(pa.probability / bs.probability, 1.0 - lc, epsilon = 1e-10);
        }
    }

    #[test]
    fn catalyzed_state_moments_match_inner_route() {
        let h = catalyze_numeric(
            c(2.0, 0.0),
            0.25,
            DeviceKind::BeamSplitter,
            &TruncationPolicy::adaptive(),
        )
        .unwrap();
        // frozen from the closed-form moment set at (α = 2, Λ = 0.25)
        assert_abs_diff_eq!(moment(&h.state, 1, 1).re, 4.0, epsilon = 1e-10);
        assert_abs_diff_eq!(moment(&h.state, 2, 2).re, 21.0, epsilon = 1e-9);
        let self_overlap = inner(&h.state, &h.state);
        assert_abs_diff_eq!(self_overlap.re, 1.0, epsilon = 1e-12);
    }
}
