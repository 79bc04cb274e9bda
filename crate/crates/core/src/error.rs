//! Error type shared by every module of the crate.

use thiserror::Error;

/// Failures reported by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Dp3Error {
    /// Parameters violate their invariants (for example `b = 0`).
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    /// A symmetry or regime label outside the admissible set.
    #[error("inadmissible label: {0}")]
    InvalidLabel(String),
    /// Index or argument outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A monodromy point with `g11 = g22 = 0`.
    #[error("degenerate monodromy point: {0}")]
    DegeneratePoint(String),
    /// The monodromy case does not match the requested branch, or is case (i).
    #[error("invalid monodromy case: {0}")]
    InvalidCase(String),
    /// A zero pivot while completing a monodromy point.
    #[error("zero pivot: {0}")]
    ZeroPivot(String),
    /// The integrator approached a pole or could not reduce its step further.
    #[error("singular step at tau = {tau}: {reason}")]
    SingularStep {
        /// Position where integration stopped (real part of the path parameter image).
        tau: String,
        /// Human readable diagnostic.
        reason: String,
    },
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Dp3Error>;
