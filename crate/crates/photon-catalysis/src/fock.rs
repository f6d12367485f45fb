//! Truncated Fock-space states: single-mode vectors, two-mode grids,
//! ladder-operator action, inner products, and normally ordered moments.
//!
//! Everything here is immutable after construction and purely functional,
//! so values can be shared across threads freely.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math::{ln_factorial, sqrt_factorial_ratio};

/// Default tolerance on probability mass left outside a truncated window.
pub const DEFAULT_TAIL_TOL: f64 = 1e-12;

/// How to pick the retained number-basis window for constructed states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TruncationPolicy {
    /// Keep exactly n = 0..N. Construction fails if the discarded tail
    /// exceeds the tail tolerance.
    Fixed { n_max: usize, tail_tol: f64 },
    /// Choose N from the state being built so that the discarded tail is
    /// far below `tail_tol`.
    Adaptive { tail_tol: f64 },
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy::Adaptive { tail_tol: DEFAULT_TAIL_TOL }
    }
}

impl TruncationPolicy {
    pub fn adaptive() -> Self {
        Self::default()
    }

    pub fn fixed(n_max: usize) -> Self {
        TruncationPolicy::Fixed { n_max, tail_tol: DEFAULT_TAIL_TOL }
    }

    pub fn tail_tol(&self) -> f64 {
        match *self {
            TruncationPolicy::Fixed { tail_tol, .. } => tail_tol,
            TruncationPolicy::Adaptive { tail_tol } => tail_tol,
        }
    }

    /// Window for a coherent amplitude: N = ⌈|α|² + 10√(max(|α|²,1)) + 20⌉.
    /// The Poisson tail beyond that is far below 1e-12 for |α| ≤ 3.
    pub fn coherent_truncation(&self, alpha: Complex64) -> usize {
        match *self {
            TruncationPolicy::Fixed { n_max, .. } => n_max,
            TruncationPolicy::Adaptive { .. } => adaptive_coherent_truncation(alpha),
        }
    }
}

/// Adaptive window size for a coherent amplitude (see [`TruncationPolicy`]).
pub fn adaptive_coherent_truncation(alpha: Complex64) -> usize {
    let x = alpha.norm_sqr();
    (x + 10.0 * x.max(1.0).sqrt() + 20.0).ceil() as usize
}

/// A single-mode pure state over the truncated number basis n = 0..N.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    amps: Vec<Complex64>,
    tail_mass: f64,
}

impl FockVector {
    /// Wrap raw amplitudes; the window is `amps.len() - 1`.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Self {
        assert!(!amps.is_empty(), "FockVector needs at least the n = 0 slot");
        FockVector { amps, tail_mass: 0.0 }
    }

    /// Amplitude ⟨n|ψ⟩, zero beyond the window.
    pub fn amp(&self, n: usize) -> Complex64 {
        self.amps.get(n).copied().unwrap_or_default()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// Largest retained photon number N.
    pub fn truncation(&self) -> usize {
        self.amps.len() - 1
    }

    /// Probability mass that construction discarded beyond the window
    /// (before renormalization). Zero for exactly representable states.
    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Rescale to unit norm. Zero vectors are returned unchanged.
    pub fn normalized(mut self) -> Self {
        let n = self.norm();
        if n > 0.0 {
            for a in &mut self.amps {
                *a /= n;
            }
        }
        self
    }

    /// |⟨u|v⟩| for unit-normalized states.
    pub fn fidelity(&self, other: &FockVector) -> f64 {
        inner(self, other).norm()
    }

    /// Photon-number distribution P(n) = |⟨n|ψ⟩|².
    pub fn pnd(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }
}

/// Raw coherent-state amplitude αⁿ e^{−|α|²/2} / √(n!), evaluated in log
/// magnitude so large n and |α| cannot overflow.
fn coherent_amplitude(alpha: Complex64, n: usize) -> Complex64 {
    let x = alpha.norm_sqr();
    if x == 0.0 {
        return if n == 0 { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
    }
    let ln_mag = n as f64 * alpha.norm().ln() - 0.5 * x - 0.5 * ln_factorial(n);
    Complex64::from_polar(ln_mag.exp(), n as f64 * alpha.arg())
}

/// Coherent state |α⟩ over the policy's window, renormalized, with the
/// discarded Poisson tail recorded in `tail_mass`.
pub fn coherent(alpha: Complex64, policy: &TruncationPolicy) -> Result<FockVector> {
    if !alpha.re.is_finite() || !alpha.im.is_finite() {
        return Err(Error::InvalidParameter(format!("non-finite coherent amplitude {alpha}")));
    }
    let n_max = policy.coherent_truncation(alpha);
    let amps: Vec<Complex64> = (0..=n_max).map(|n| coherent_amplitude(alpha, n)).collect();
    let retained: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
    let tail = (1.0 - retained).max(0.0);
    if tail > policy.tail_tol() {
        return Err(Error::Truncation { tail, tol: policy.tail_tol(), lambda: None });
    }
    let mut state = FockVector::from_amplitudes(amps).normalized();
    state.tail_mass = tail;
    Ok(state)
}

/// Number state |n⟩. Adaptive policies leave one slot of creation headroom.
pub fn fock(n: usize, policy: &TruncationPolicy) -> Result<FockVector> {
    let n_max = match *policy {
        TruncationPolicy::Fixed { n_max, .. } => {
            if n > n_max {
                return Err(Error::InvalidParameter(format!(
                    "Fock index {n} beyond fixed truncation {n_max}"
                )));
            }
            n_max
        }
        TruncationPolicy::Adaptive { .. } => n + 1,
    };
    let mut amps = vec![Complex64::default(); n_max + 1];
    amps[n] = Complex64::new(1.0, 0.0);
    Ok(FockVector::from_amplitudes(amps))
}

/// ⟨u|v⟩ = Σₙ conj(u[n])·v[n]; the shorter operand is zero-extended.
pub fn inner(u: &FockVector, v: &FockVector) -> Complex64 {
    u.amps.iter().zip(v.amps.iter()).map(|(a, b)| a.conj() * b).sum()
}

/// Result of a ladder-operator application: the (unnormalized) image and
/// the squared mass pushed beyond the window by creations.
#[derive(Debug, Clone)]
pub struct LadderOutcome {
    pub state: FockVector,
    pub overflow_mass: f64,
}

/// Apply aˡ then a†ᵏ with the standard √n factors, keeping the input
/// window. Creation amplitudes landing beyond the window are dropped and
/// their squared mass accumulated; an accumulator above the policy tail
/// tolerance signals under-truncation to the caller.
pub fn ladder(state: &FockVector, creations: usize, annihilations: usize) -> LadderOutcome {
    let n_max = state.truncation();
    // a^l; annihilating past the window leaves the zero vector
    let mut lowered = vec![Complex64::default(); n_max + 1];
    let keep = (n_max + 1).saturating_sub(annihilations);
    for (n, low) in lowered.iter_mut().enumerate().take(keep) {
        let src = n + annihilations;
        *low = state.amps[src] * sqrt_factorial_ratio(src, n);
    }
    // a†^k
    let mut raised = vec![Complex64::default(); n_max + 1];
    let mut overflow = 0.0;
    for (m, amp) in lowered.iter().enumerate() {
        if amp.norm_sqr() == 0.0 {
            continue;
        }
        let dst = m + creations;
        let scaled = amp * sqrt_factorial_ratio(dst, m);
        if dst <= n_max {
            raised[dst] = scaled;
        } else {
            overflow += scaled.norm_sqr();
        }
    }
    LadderOutcome { state: FockVector::from_amplitudes(raised), overflow_mass: overflow }
}

/// Normally ordered moment ⟨a†ᵏaˡ⟩ for a normalized state, computed as
/// ⟨aᵏψ | aˡψ⟩ so no creation can overflow the window.
pub fn moment(state: &FockVector, creations: usize, annihilations: usize) -> Complex64 {
    let bra = ladder(state, 0, creations).state;
    let ket = ladder(state, 0, annihilations).state;
    inner(&bra, &ket)
}

/// A two-mode pure state on the truncated grid (n_a, n_b) ∈ 0..N_a × 0..N_b.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeFockMatrix {
    amps: Vec<Complex64>,
    n_a: usize,
    n_b: usize,
}

impl TwoModeFockMatrix {
    pub fn zeros(n_a: usize, n_b: usize) -> Self {
        TwoModeFockMatrix { amps: vec![Complex64::default(); (n_a + 1) * (n_b + 1)], n_a, n_b }
    }

    #[inline]
    fn idx(&self, m: usize, n: usize) -> usize {
        m * (self.n_b + 1) + n
    }

    /// Amplitude ⟨m, n|ψ⟩, zero outside the grid.
    pub fn amp(&self, m: usize, n: usize) -> Complex64 {
        if m > self.n_a || n > self.n_b {
            return Complex64::default();
        }
        self.amps[self.idx(m, n)]
    }

    pub fn set(&mut self, m: usize, n: usize, value: Complex64) {
        let i = self.idx(m, n);
        self.amps[i] = value;
    }

    pub fn add(&mut self, m: usize, n: usize, value: Complex64) {
        let i = self.idx(m, n);
        self.amps[i] += value;
    }

    pub fn trunc_a(&self) -> usize {
        self.n_a
    }

    pub fn trunc_b(&self) -> usize {
        self.n_b
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// ⟨n_a + n_b⟩ — conserved exactly by any beam splitter.
    pub fn total_photon_mean(&self) -> f64 {
        let mut acc = 0.0;
        for m in 0..=self.n_a {
            for n in 0..=self.n_b {
                acc += (m + n) as f64 * self.amps[self.idx(m, n)].norm_sqr();
            }
        }
        acc
    }

    /// The (unnormalized) mode-a vector ⟨n_b = j|ψ⟩.
    pub fn mode_b_slice(&self, j: usize) -> FockVector {
        let amps = (0..=self.n_a).map(|m| self.amp(m, j)).collect();
        FockVector::from_amplitudes(amps)
    }
}

/// Product state grid[m][n] = u[m]·v[n].
pub fn tensor(u: &FockVector, v: &FockVector) -> TwoModeFockMatrix {
    let mut grid = TwoModeFockMatrix::zeros(u.truncation(), v.truncation());
    for (m, a) in u.amplitudes().iter().enumerate() {
        for (n, b) in v.amplitudes().iter().enumerate() {
            grid.set(m, n, a * b);
        }
    }
    grid
}
