//! Trans-series asymptotics of the degenerate Painlevé III equation
//!
//! `u'' = (u')²/u − u'/τ + (−8εu² + 2ab)/τ + b²/u`
//!
//! together with its Hamiltonian, the auxiliary functions `f±`, the σ-function
//! and the phase `φ̂`, parametrised by points on the monodromy manifold.
//!
//! Modules:
//! - [`coefficients`]: recurrence-generated coefficient families;
//! - [`monodromy`]: the monodromy manifold and its symmetry group action;
//! - [`asymptotics`]: evaluation of the truncated trans-series on the four rays;
//! - [`verify`]: ODE integration, residuals, order fits and independent oracles;
//! - [`cli`]: the batch front-end behind the `dp3` binary.

pub mod error;
pub mod params;
pub mod series;
pub mod coefficients;
pub mod monodromy;
pub mod asymptotics;
pub mod verify;
pub mod cli;

pub use error::{Dp3Error, Result};
pub use params::{derived_constants, BranchIndex, DerivedConstants, Parameters, C64};
