//! The monodromy manifold, its three cases, and the symmetry group action.
//!
//! A point is the tuple `(a, s⁰₀, s∞₀, s∞₁, g₁₁, g₁₂, g₂₁, g₂₂)` subject to five
//! algebraic equations. Case (ii) (`g₂₂ = 0`) is designated by `k = +1` and case
//! (iii) (`g₁₁ = 0`) by `k = -1`.

mod symmetry;

pub use symmetry::{
    apply_symmetry, composition_table, enumerate_labels, verify_composition, CompositionReport,
    SymmetryLabel,
};

use crate::error::{Dp3Error, Result};
use crate::params::{BranchIndex, C64, I};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Relative threshold below which `g₁₁` or `g₂₂` counts as zero.
pub const CASE_ZERO_TOL: f64 = 1e-12;

/// A point `(a, s⁰₀, s∞₀, s∞₁, g₁₁, g₁₂, g₂₁, g₂₂)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonodromyPoint {
    /// Formal monodromy parameter.
    pub a: C64,
    /// Stokes multiplier `s⁰₀`.
    pub s00: C64,
    /// Stokes multiplier `s∞₀`.
    pub s0inf: C64,
    /// Stokes multiplier `s∞₁`.
    pub s1inf: C64,
    /// Connection matrix entry `g₁₁`.
    pub g11: C64,
    /// Connection matrix entry `g₁₂`.
    pub g12: C64,
    /// Connection matrix entry `g₂₁`.
    pub g21: C64,
    /// Connection matrix entry `g₂₂`.
    pub g22: C64,
}

impl MonodromyPoint {
    /// The eight coordinates in serialization order.
    pub fn coords(&self) -> [C64; 8] {
        [
            self.a, self.s00, self.s0inf, self.s1inf, self.g11, self.g12, self.g21, self.g22,
        ]
    }

    /// The connection matrix entries `[g11, g12, g21, g22]`.
    pub fn g(&self) -> [C64; 4] {
        [self.g11, self.g12, self.g21, self.g22]
    }

    /// `g₁₁g₂₂ − g₁₂g₂₁`.
    pub fn det(&self) -> C64 {
        self.g11 * self.g22 - self.g12 * self.g21
    }

    /// `|det G − det G'|` relative to `|g₁₁g₂₂| + |g₁₂g₂₁|` of both points.
    pub fn det_gap(&self, other: &MonodromyPoint) -> f64 {
        let scale = |p: &MonodromyPoint| (p.g11 * p.g22).norm() + (p.g12 * p.g21).norm();
        (self.det() - other.det()).norm() / scale(self).max(scale(other))
    }
}

/// Residuals of the five defining equations at a point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ManifoldReport {
    /// Raw residuals in the order det, product, cross, quad1, quad2.
    pub residuals: [C64; 5],
    /// Residuals divided by `max(1, Σ|terms|)` of each equation.
    pub scaled: [f64; 5],
    /// Largest scaled residual.
    pub max_residual: f64,
    /// True when `max_residual ≤ tol`.
    pub pass: bool,
}

/// Evaluates the five defining equations.
///
/// Each residual is reported raw and scaled by the magnitude of the terms of its
/// equation (absolute when those terms are below one), which keeps the test
/// meaningful when `e^{±2πa}` is large.
pub fn check_manifold(p: &MonodromyPoint, tol: f64) -> ManifoldReport {
    let e = (PI * p.a).exp();
    let ei = e.inv();
    let one = C64::new(1.0, 0.0);
    let terms: [Vec<C64>; 5] = [
        vec![p.g11 * p.g22, -p.g12 * p.g21, -one],
        vec![p.s0inf * p.s1inf, one, ei * ei, I * p.s00 * ei],
        vec![p.g21 * p.g22, -p.g11 * p.g12, p.s00 * p.g11 * p.g22, -I * ei],
        vec![
            p.g11 * p.g11,
            -p.g21 * p.g21,
            -p.s00 * p.g11 * p.g21,
            -I * p.s0inf * ei,
        ],
        vec![
            p.g22 * p.g22,
            -p.g12 * p.g12,
            p.s00 * p.g12 * p.g22,
            -I * p.s1inf * e,
        ],
    ];
    let mut residuals = [C64::new(0.0, 0.0); 5];
    let mut scaled = [0.0; 5];
    for (j, t) in terms.iter().enumerate() {
        let r: C64 = t.iter().sum();
        let scale: f64 = t.iter().map(|z| z.norm()).sum::<f64>().max(1.0);
        residuals[j] = r;
        scaled[j] = r.norm() / scale;
    }
    let max_residual = scaled.iter().cloned().fold(0.0, f64::max);
    ManifoldReport {
        residuals,
        scaled,
        max_residual,
        pass: max_residual <= tol && max_residual.is_finite(),
    }
}

/// The three structural cases of a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Case {
    /// `g₁₁g₂₂ ≠ 0`.
    CaseI,
    /// `g₂₂ = 0`, designated by `k = +1`.
    CaseIiKplus,
    /// `g₁₁ = 0`, designated by `k = −1`.
    CaseIiiKminus,
}

/// A case together with its branch index, when it has one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseTag {
    /// The case.
    pub case: Case,
    /// `Some(+1)` for case (ii), `Some(−1)` for case (iii), `None` for case (i).
    pub k: Option<BranchIndex>,
}

impl CaseTag {
    /// Tag of a case.
    pub fn of(case: Case) -> Self {
        let k = match case {
            Case::CaseI => None,
            Case::CaseIiKplus => Some(BranchIndex::PLUS),
            Case::CaseIiiKminus => Some(BranchIndex::MINUS),
        };
        Self { case, k }
    }
}

/// Classifies a point by which of `g₁₁`, `g₂₂` vanishes.
pub fn classify(p: &MonodromyPoint) -> Result<CaseTag> {
    let scale = p.g().iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Err(Dp3Error::DegeneratePoint("all connection entries vanish".into()));
    }
    let z11 = p.g11.norm() <= CASE_ZERO_TOL * scale;
    let z22 = p.g22.norm() <= CASE_ZERO_TOL * scale;
    match (z11, z22) {
        (true, true) => Err(Dp3Error::DegeneratePoint(
            "g11 = g22 = 0 forces g12*g21 = -1, which contradicts the cross equation".into(),
        )),
        (false, true) => Ok(CaseTag::of(Case::CaseIiKplus)),
        (true, false) => Ok(CaseTag::of(Case::CaseIiiKminus)),
        (false, false) => Ok(CaseTag::of(Case::CaseI)),
    }
}

fn nonzero(z: C64, name: &str) -> Result<()> {
    if z.norm() == 0.0 || !z.norm().is_finite() {
        Err(Dp3Error::ZeroPivot(format!("{name} must be finite and non-zero")))
    } else {
        Ok(())
    }
}

/// Completes a case (i) point from its connection matrix.
pub fn complete_case1(a: C64, g11: C64, g12: C64, g21: C64, g22: C64) -> Result<MonodromyPoint> {
    nonzero(g11, "g11")?;
    nonzero(g22, "g22")?;
    let det = g11 * g22 - g12 * g21;
    if (det - 1.0).norm() > 1e-12 * (1.0 + (g11 * g22).norm() + (g12 * g21).norm()) {
        return Err(Dp3Error::InvalidParameters(format!(
            "connection matrix must have unit determinant, got {det}"
        )));
    }
    let e = (PI * a).exp();
    let ei = e.inv();
    Ok(MonodromyPoint {
        a,
        s00: (I * ei + g11 * g12 - g21 * g22) / (g11 * g22),
        s0inf: -(g21 + I * e * g11) / g22,
        s1inf: -I * (g22 + I * ei * g12) * ei / g11,
        g11,
        g12,
        g21,
        g22,
    })
}

/// Completes a case (ii) point (`g₂₂ = 0`, `k = +1`).
pub fn complete_case2(a: C64, s00: C64, g11: C64) -> Result<MonodromyPoint> {
    nonzero(g11, "g11")?;
    let e = (PI * a).exp();
    let ei = e.inv();
    Ok(MonodromyPoint {
        a,
        s00,
        s0inf: -I * g11 * g11 * (1.0 + e * e + I * s00 * e) * e,
        s1inf: -I * ei * ei * ei / (g11 * g11),
        g11,
        g12: -I * ei / g11,
        g21: -I * e * g11,
        g22: C64::new(0.0, 0.0),
    })
}

/// Completes a case (iii) point (`g₁₁ = 0`, `k = −1`).
pub fn complete_case3(a: C64, s00: C64, g22: C64) -> Result<MonodromyPoint> {
    nonzero(g22, "g22")?;
    let e = (PI * a).exp();
    let ei = e.inv();
    Ok(MonodromyPoint {
        a,
        s00,
        s0inf: -I * ei / (g22 * g22),
        s1inf: -I * g22 * g22 * (1.0 + e * e + I * s00 * e) * ei,
        g11: C64::new(0.0, 0.0),
        g12: I * e * g22,
        g21: I * ei / g22,
        g22,
    })
}

fn sample_modulus(rng: &mut ChaCha8Rng) -> C64 {
    let r = rng.gen_range(0.2..=2.0);
    let t = rng.gen_range(0.0..2.0 * PI);
    C64::from_polar(r, t)
}

/// Samples `a` with modulus in `[0.2, 2]` and `|Re a| ≤ 1`.
pub fn sample_a(rng: &mut ChaCha8Rng) -> C64 {
    let z = sample_modulus(rng);
    C64::new(z.re.clamp(-1.0, 1.0), z.im)
}

/// Deterministic pseudo-random point of the requested case.
pub fn sample_point(case: Case, seed: u64) -> MonodromyPoint {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = sample_a(&mut rng);
    loop {
        let s00 = sample_modulus(&mut rng);
        let candidate = match case {
            Case::CaseIiKplus => complete_case2(a, s00, sample_modulus(&mut rng)),
            Case::CaseIiiKminus => complete_case3(a, s00, sample_modulus(&mut rng)),
            Case::CaseI => {
                let g11 = sample_modulus(&mut rng);
                let g12 = sample_modulus(&mut rng);
                let g21 = sample_modulus(&mut rng);
                let g22 = (1.0 + g12 * g21) / g11;
                if g22.norm() < 0.05 {
                    continue;
                }
                complete_case1(a, g11, g12, g21, g22)
            }
        };
        if let Ok(p) = candidate {
            return p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn identity_point_is_on_the_manifold() {
        let p = complete_case1(c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0))
            .unwrap();
        assert_eq!(p.s0inf, c(0.0, -1.0));
        assert_eq!(p.s1inf, c(0.0, -1.0));
        assert_eq!(p.s00, c(0.0, 1.0));
        assert!(check_manifold(&p, 1e-14).pass);
        assert_eq!(classify(&p).unwrap().case, Case::CaseI);
    }

    #[test]
    fn case_two_completion_at_simple_inputs() {
        let p = complete_case2(c(0.0, 0.0), c(0.0, 1.0), c(1.0, 0.0)).unwrap();
        assert!((p.g12 - c(0.0, -1.0)).norm() < 1e-15);
        assert!((p.g21 - c(0.0, -1.0)).norm() < 1e-15);
        assert!((p.s0inf - c(0.0, -1.0)).norm() < 1e-15);
        assert!((p.s1inf - c(0.0, -1.0)).norm() < 1e-15);
        assert!(check_manifold(&p, 1e-12).pass);
    }

    #[test]
    fn perturbation_leaves_the_manifold() {
        let mut p = sample_point(Case::CaseIiKplus, 1);
        assert!(check_manifold(&p, 1e-12).pass);
        p.g11 += 1e-3;
        assert!(!check_manifold(&p, 1e-6).pass);
    }

    #[test]
    fn degenerate_point_is_reported() {
        let p = MonodromyPoint {
            a: c(0.0, 0.0),
            s00: c(0.0, 0.0),
            s0inf: c(0.0, 0.0),
            s1inf: c(0.0, 0.0),
            g11: c(0.0, 0.0),
            g12: c(1.0, 0.0),
            g21: c(-1.0, 0.0),
            g22: c(0.0, 0.0),
        };
        assert!(matches!(classify(&p), Err(Dp3Error::DegeneratePoint(_))));
    }
}
