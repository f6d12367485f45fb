//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by state construction, device application, heralding,
/// phase-space integration, and extremum search.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A fixed or capped truncation left more probability mass outside the
    /// retained window than the policy tolerates.
    #[error("truncation leaves tail mass {tail:.3e} > tolerance {tol:.3e}{}",
            .lambda.map(|l| format!(" (catalysis parameter {l})")).unwrap_or_default())]
    Truncation {
        tail: f64,
        tol: f64,
        /// Catalysis parameter of the offending device application, if any.
        lambda: Option<f64>,
    },

    /// Heralding projected onto a component with (numerically) zero weight.
    #[error("degenerate herald: single-photon component has probability {probability:.3e}")]
    DegenerateHerald { probability: f64 },

    /// The Fock-basis Wigner kernel is not supported beyond combined order 400.
    #[error("Wigner kernel overflow: state truncation {truncation} exceeds supported order 200")]
    KernelOverflow { truncation: usize },

    /// Phase-space quadrature failed its normalization self-check.
    #[error("integration failure: signed Wigner volume drifts from 1 by {drift:.3e}")]
    IntegrationFailure { drift: f64 },

    /// The bracket handed to the extremum search does not contain an interior
    /// extremum of the requested kind.
    #[error("bracket [{lo}, {hi}] fails the three-point unimodality check")]
    BracketNotUnimodal { lo: f64, hi: f64 },

    /// Malformed or out-of-range user input.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI: 2 parse/validation, 3 degenerate
    /// herald, 4 truncation, 1 anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidParameter(_) => 2,
            Error::DegenerateHerald { .. } => 3,
            Error::Truncation { .. } => 4,
            _ => 1,
        }
    }
}
