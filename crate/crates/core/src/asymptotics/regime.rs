//! Rays of approach and the labels selecting them.

use crate::error::{Dp3Error, Result};
use crate::monodromy::SymmetryLabel;
use crate::params::{cis, BranchIndex, Parameters, C64};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;

/// Axis carrying the ray `τ → ∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Axis {
    /// `τ → +∞·e^{iπε₁}`, `ε₁ ∈ {0, ±1}`.
    Real,
    /// `τ → +∞·e^{iπε̂₁/2}`, `ε̂₁ ∈ {±1}`.
    Imaginary,
}

/// A ray together with its phase labels, the symmetry branch `ℓ` and `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RegimeLabel {
    /// Real or imaginary axis.
    pub axis: Axis,
    /// `ε₁` on the real axis, `ε̂₁` on the imaginary axis.
    pub eps1: i8,
    /// `ε₂` or `ε̂₂`: the phase label of `εb`.
    pub eps2: i8,
    /// `m(ε₂)` or `m̂(ε̂₂)`.
    pub m: i8,
    /// `ℓ ∈ {0, 1}`.
    pub ell: u8,
    /// Branch index.
    pub k: BranchIndex,
}

impl RegimeLabel {
    /// Validated regime label.
    pub fn new(axis: Axis, eps1: i8, eps2: i8, m: i8, ell: u8, k: BranchIndex) -> Result<Self> {
        SymmetryLabel::new(axis == Axis::Imaginary, eps1, eps2, m, ell)?;
        Ok(Self {
            axis,
            eps1,
            eps2,
            m,
            ell,
            k,
        })
    }

    /// The regime `(0, 0, 0 | 0)` on the positive real axis.
    pub fn base(k: BranchIndex) -> Self {
        Self {
            axis: Axis::Real,
            eps1: 0,
            eps2: 0,
            m: 0,
            ell: 0,
            k,
        }
    }

    /// Regime attached to a symmetry label.
    pub fn from_label(label: SymmetryLabel, k: BranchIndex) -> Self {
        Self {
            axis: if label.hatted {
                Axis::Imaginary
            } else {
                Axis::Real
            },
            eps1: label.eps1,
            eps2: label.eps2,
            m: label.m,
            ell: label.ell,
            k,
        }
    }

    /// The symmetry label transporting monodromy data to this regime.
    pub fn symmetry_label(&self) -> SymmetryLabel {
        SymmetryLabel {
            hatted: self.axis == Axis::Imaginary,
            eps1: self.eps1,
            eps2: self.eps2,
            m: self.m,
            ell: self.ell,
        }
    }

    /// Checks that the phase label agrees with the sign of `εb`.
    pub fn check_params(&self, params: &Parameters) -> Result<()> {
        params.validate()?;
        if (params.eb() > 0.0) != (self.eps2 == 0) {
            return Err(Dp3Error::InvalidParameters(format!(
                "regime {self} needs epsilon*b {} 0, got {}",
                if self.eps2 == 0 { ">" } else { "<" },
                params.eb()
            )));
        }
        Ok(())
    }

    /// `λ` with `τ = λ x^{-3}` along the ray: `(-1)^{ε₁}` or `e^{iπε̂₁/2}`.
    pub fn lambda(&self) -> C64 {
        match self.axis {
            Axis::Real => C64::new(if self.eps1 == 0 { 1.0 } else { -1.0 }, 0.0),
            Axis::Imaginary => cis(PI * f64::from(self.eps1) / 2.0),
        }
    }

    /// The phase sign `(-1)^{ε₂}` or `(-1)^{ε̂₂}`.
    pub fn sign(&self) -> f64 {
        if self.eps2 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// All admissible regimes for the sign of `εb`.
    pub fn all_for(params: &Parameters, k: BranchIndex) -> Vec<RegimeLabel> {
        crate::monodromy::enumerate_labels()
            .into_iter()
            .map(|l| Self::from_label(l, k))
            .filter(|r| r.check_params(params).is_ok())
            .collect()
    }
}

impl fmt::Display for RegimeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} k={:+}", self.symmetry_label(), self.k.value())
    }
}

/// `τ* = τ e^{-iπε̂₁/2}`.
pub fn tau_star(tau: C64, eps1_hat: i8) -> C64 {
    tau * cis(-PI * f64::from(eps1_hat) / 2.0)
}
