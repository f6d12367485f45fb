//! Single-photon catalysis of coherent states.
//!
//! A coherent state |α⟩ and a single photon |1⟩ enter a beam splitter or a
//! nondegenerate parametric amplifier; detecting exactly one photon in the
//! auxiliary output heralds a *single-photon catalyzed coherent state* in
//! the other channel. Both devices produce the same state once their
//! strengths are expressed through the catalysis parameter
//! Λ = sin²θ = tanh²λ, which sweeps the output from |α⟩ (Λ = 0) to |1⟩
//! (Λ = 1).
//!
//! The crate keeps two independent routes to every quantity:
//!
//! * [`analytic`] — closed forms for the Fock coefficients, heralding
//!   probabilities, photon statistics (Mandel Q, g²(0)), quadrature
//!   variances, and the Wigner function;
//! * [`devices`] on top of [`fock`] — a brute-force truncated-Fock-space
//!   oracle that builds the same states by explicit unitary action and
//!   conditional projection.
//!
//! [`phase_space`] integrates either Wigner route into the negative-volume
//! measure δ, [`scan`] sweeps parameters and locates extrema, and
//! [`verify`] cross-checks the two routes against each other. The `spccs`
//! binary exposes all of it on the command line; see the `examples/`
//! directory for library usage per capability.

pub mod analytic;
pub mod cli;
pub mod devices;
pub mod error;
pub mod fock;
pub mod math;
pub mod phase_space;
pub mod scan;
pub mod verify;

pub use analytic::{
    i0, i_k, moments_analytic, p_success, pnd, spccs_coefficients, wigner_closed,
    AnalyticSpccs, CatalysisParams, MomentSet,
};
pub use devices::{
    bs_apply, catalyze_numeric, herald_single_photon, pa_apply, DeviceKind, DeviceSpec,
    HeraldResult,
};
pub use error::{Error, Result};
pub use fock::{
    coherent, fock, inner, ladder, moment, tensor, FockVector, TruncationPolicy,
    TwoModeFockMatrix,
};
pub use phase_space::{negativity_volume, wigner_numeric, NegativityResult, PhaseSpaceRegion};
pub use scan::{find_extremum, scan_metric, ExtremumKind, ExtremumResult, Metric, ScanRequest};
