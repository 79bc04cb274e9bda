//! Equation parameters, the branch index `k`, and every root the formulas need.
//!
//! All fractional powers of `εb` and of `τ` are taken here and nowhere else:
//! positive reals use positive roots, and for a negative real `z` the cube root
//! is `-|z|^{1/3}` with `z^{2/3} = (z^{1/3})^2`.

use crate::error::{Dp3Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Complex double precision scalar used everywhere.
pub type C64 = Complex64;

/// Imaginary unit.
pub const I: C64 = C64::new(0.0, 1.0);

/// Relative tolerance used to decide that `εb` is real.
const REALITY_TOL: f64 = 1e-14;

/// `(a, b, ε)` together with the phase labels of `εb`.
///
/// `eps2` labels the phase on the real axis (`εb = |εb| e^{iπ ε₂}`), and
/// `eps2_hat` plays the same role on the imaginary axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Parameters {
    /// Formal monodromy parameter.
    pub a: C64,
    /// Non-zero coupling; `εb` must be real.
    pub b: C64,
    /// Sign `ε ∈ {+1, -1}`.
    pub epsilon: i8,
    /// Real-axis phase label of `εb`.
    pub eps2: i8,
    /// Imaginary-axis phase label of `εb`.
    pub eps2_hat: i8,
}

impl Parameters {
    /// Builds validated parameters, choosing `eps2 = eps2_hat = 0` for `εb > 0`
    /// and `+1` for `εb < 0`.
    pub fn new(a: C64, b: C64, epsilon: i8) -> Result<Self> {
        let eb = b * f64::from(epsilon);
        let label = if eb.re > 0.0 { 0 } else { 1 };
        Self::with_labels(a, b, epsilon, label, label)
    }

    /// Builds validated parameters with explicit phase labels.
    pub fn with_labels(a: C64, b: C64, epsilon: i8, eps2: i8, eps2_hat: i8) -> Result<Self> {
        let p = Self {
            a,
            b,
            epsilon,
            eps2,
            eps2_hat,
        };
        p.validate()?;
        Ok(p)
    }

    /// Checks all invariants.
    pub fn validate(&self) -> Result<()> {
        if !(self.a.re.is_finite() && self.a.im.is_finite()) {
            return Err(Dp3Error::InvalidParameters("a must be finite".into()));
        }
        if self.b.norm() == 0.0 || !self.b.norm().is_finite() {
            return Err(Dp3Error::InvalidParameters("b must be finite and non-zero".into()));
        }
        if self.epsilon != 1 && self.epsilon != -1 {
            return Err(Dp3Error::InvalidParameters(format!(
                "epsilon must be +1 or -1, got {}",
                self.epsilon
            )));
        }
        let eb = self.b * f64::from(self.epsilon);
        if eb.im.abs() > REALITY_TOL * eb.norm() {
            return Err(Dp3Error::InvalidParameters(format!(
                "epsilon*b must be real, got {eb}"
            )));
        }
        for (name, label) in [("eps2", self.eps2), ("eps2_hat", self.eps2_hat)] {
            let ok = if eb.re > 0.0 {
                label == 0
            } else {
                label == 1 || label == -1
            };
            if !ok {
                return Err(Dp3Error::InvalidParameters(format!(
                    "{name} = {label} is inconsistent with the sign of epsilon*b = {}",
                    eb.re
                )));
            }
        }
        Ok(())
    }

    /// The real number `εb`.
    pub fn eb(&self) -> f64 {
        (self.b * f64::from(self.epsilon)).re
    }

    /// `ε` as a float.
    pub fn eps(&self) -> f64 {
        f64::from(self.epsilon)
    }

    /// True when `i·a` is a non-zero integer, a case whose asymptotics need
    /// separate analysis. At `a = 0` the expansion reduces to the exact solution
    /// `c₀,k τ^{1/3}` and no warning is raised.
    pub fn warn_integer_ia(&self) -> bool {
        let ia = I * self.a;
        let n = ia.re.round();
        n != 0.0 && (ia.re - n).abs() <= 1e-12 * (1.0 + n.abs()) && ia.im.abs() <= 1e-12
    }
}

/// Branch index `k ∈ {+1, -1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub struct BranchIndex(i8);

impl BranchIndex {
    /// `k = +1`.
    pub const PLUS: Self = Self(1);
    /// `k = -1`.
    pub const MINUS: Self = Self(-1);

    /// Validates `k`.
    pub fn new(k: i8) -> Result<Self> {
        match k {
            1 | -1 => Ok(Self(k)),
            _ => Err(Dp3Error::InvalidParameters(format!("k must be +1 or -1, got {k}"))),
        }
    }

    /// The integer value.
    pub fn value(self) -> i8 {
        self.0
    }

    /// The value as a float.
    pub fn f(self) -> f64 {
        f64::from(self.0)
    }
}

impl TryFrom<i8> for BranchIndex {
    type Error = Dp3Error;
    fn try_from(k: i8) -> Result<Self> {
        Self::new(k)
    }
}

impl From<BranchIndex> for i8 {
    fn from(k: BranchIndex) -> i8 {
        k.0
    }
}

/// Constants derived from `(a, b, ε, k)` with the branch policy applied.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivedConstants {
    /// `α_k = 2^{-1/2} (εb)^{1/6} e^{iπk/3}`.
    pub alpha_k: C64,
    /// `c_{0,k} = ε (εb)^{2/3} e^{-i2πk/3} / 2`.
    pub c0k: C64,
    /// `(2 + √3)^{ia}`.
    pub p_a: C64,
    /// `(3√3/2) (εb)^{1/3}`.
    pub theta_coeff: C64,
    /// `(9/2) (εb)^{1/3}`.
    pub beta_coeff: C64,
    /// `(εb)^{1/3}`, real with the sign of `εb`.
    pub cbrt_eb: C64,
    /// `(εb)^{1/6}`, the principal square root of `(εb)^{1/3}`.
    pub sixth_eb: C64,
    /// `|εb|^{1/2}`, the square root of the de-phased product.
    pub sqrt_abs_eb: f64,
    /// `|εb|^{1/6}`.
    pub sixth_abs_eb: f64,
    /// `α_k^2 = (εb)^{1/3} e^{i2πk/3} / 2`.
    pub alpha_sq: C64,
    /// `e^{i2πk/3}`.
    pub omega: C64,
}

/// Real cube root with the branch convention `(-x)^{1/3} = -x^{1/3}`.
pub fn real_cbrt(x: f64) -> f64 {
    x.cbrt()
}

/// `e^{iθ}`.
pub fn cis(theta: f64) -> C64 {
    C64::from_polar(1.0, theta)
}

/// Computes every constant of [`DerivedConstants`].
pub fn derived_constants(params: &Parameters, k: BranchIndex) -> Result<DerivedConstants> {
    params.validate()?;
    let eb = params.eb();
    let kf = k.f();
    let rho = real_cbrt(eb);
    let cbrt_eb = C64::new(rho, 0.0);
    let sixth_eb = cbrt_eb.sqrt();
    let omega = cis(2.0 * PI * kf / 3.0);
    let alpha_k = sixth_eb * cis(PI * kf / 3.0) / 2f64.sqrt();
    let c0k = params.eps() * rho * rho * omega.conj() / 2.0;
    let p_a = (I * params.a * (2.0 + 3f64.sqrt()).ln()).exp();
    Ok(DerivedConstants {
        alpha_k,
        c0k,
        p_a,
        theta_coeff: cbrt_eb * (1.5 * 3f64.sqrt()),
        beta_coeff: cbrt_eb * 4.5,
        cbrt_eb,
        sixth_eb,
        sqrt_abs_eb: eb.abs().sqrt(),
        sixth_abs_eb: eb.abs().powf(1.0 / 6.0),
        alpha_sq: cbrt_eb * omega / 2.0,
        omega,
    })
}

/// `(2 + √3)^{z}` for complex `z`.
pub fn two_plus_sqrt3_pow(z: C64) -> C64 {
    (z * (2.0 + 3f64.sqrt()).ln()).exp()
}

/// Principal cube root of a complex number.
///
/// Used for the ray variable `y = (τ/λ)^{1/3}`, where `τ/λ` lies on the positive
/// real axis; off the axis the principal branch gives the analytic continuation.
pub fn principal_cbrt(z: C64) -> C64 {
    if z.im == 0.0 && z.re >= 0.0 {
        C64::new(z.re.cbrt(), 0.0)
    } else {
        z.powf(1.0 / 3.0)
    }
}

/// `τ^{1/3}` with the branch convention: for negative real `τ` this is `-|τ|^{1/3}`.
pub fn tau_cbrt(tau: C64) -> C64 {
    if tau.im == 0.0 {
        C64::new(tau.re.cbrt(), 0.0)
    } else if tau.re < 0.0 {
        -principal_cbrt(-tau)
    } else {
        principal_cbrt(tau)
    }
}
