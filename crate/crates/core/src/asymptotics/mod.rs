//! Truncated trans-series of `u`, `u'`, `f±`, `ℋ`, `σ` and `φ̂` on the eight rays.
//!
//! Every ray is handled by one code path. Along a ray write `τ = λx^{-3}` with
//! `x → 0⁺`: `λ = (-1)^{ε₁}` on the real axis and `λ = e^{iπε̂₁/2}` on the
//! imaginary axis, so that `x = τ^{-1/3}` resp. `x = τ*^{-1/3}`. The imaginary-axis
//! expansions coincide with the real-axis ones after `a → −a` and the `λ`-scaling;
//! the hatted coefficient tables already incorporate `a → −a`.
//!
//! The power series of `f±`, `ℋ` and `σ` carry the sign `+1` on the real axis and
//! `−1` on the imaginary axis, whatever the sign of `εb`. The exponentially small
//! terms and the phase carry `(-1)^{ε₂}` resp. `(-1)^{ε̂₂}`.
//!
//! The `(1 + O(τ^{-1/3}))` factor multiplying each exponentially small term is
//! evaluated as `1`.

mod regime;

pub use regime::{tau_star, Axis, RegimeLabel};

use crate::coefficients::{Pipeline, RayCoefficients};
use crate::error::{Dp3Error, Result};
use crate::monodromy::{
    apply_symmetry, classify, complete_case2, complete_case3, enumerate_labels, Case, MonodromyPoint,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use crate::params::{
    cis, derived_constants, principal_cbrt, tau_cbrt, two_plus_sqrt3_pow, BranchIndex,
    DerivedConstants, Parameters, C64, I,
};
use crate::series::Laurent;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Default cap on the truncation order, overridable through `DP3_MAX_N`.
pub const DEFAULT_MAX_N: usize = 64;

/// The truncation cap in force.
pub fn max_order() -> usize {
    std::env::var("DP3_MAX_N")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_N)
}

/// A truncated trans-series evaluated at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransSeriesEval {
    /// Evaluation point.
    pub tau: C64,
    /// Truncated power series.
    pub power_part: C64,
    /// Exponentially small term.
    pub exp_part: C64,
    /// `power_part + exp_part`.
    pub total: C64,
    /// Truncation order `N`.
    pub order_n: usize,
    /// Size of the first omitted power terms.
    pub next_term_proxy: f64,
    /// `|e^{-ik(±)ϑ} e^{∓β}|` along the ray.
    pub exp_magnitude: f64,
}

/// The phase `φ̂`, defined modulo `2π`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhiEval {
    /// The raw evaluation.
    #[serde(flatten)]
    pub eval: TransSeriesEval,
    /// `total` with its real part reduced to `(-π, π]`.
    pub principal_value: C64,
    /// Always true: the value is meaningful modulo `2π` only.
    pub mod_2pi: bool,
}

/// The one-instanton amplitude relative to the leading power term of `u`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AmplitudeA {
    /// `A_k`: the exponential term of `u` equals `c₀,k λ^{-1} A_k e^{…}`.
    pub value: C64,
    /// Branch index.
    pub k: BranchIndex,
    /// Stokes multiplier `s⁰₀`.
    pub s00: C64,
    /// Regime.
    pub regime: RegimeLabel,
}

/// Monodromy information needed by an evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MonodromyInput {
    /// Only `s⁰₀`, which fixes the exponential term.
    S00(C64),
    /// A full point, checked against the regime's case condition.
    Point(MonodromyPoint),
}

/// Functions with trans-series expansions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    /// `u(τ)`.
    U,
    /// `u'(τ)`.
    UPrime,
    /// `f₋(τ)`.
    FMinus,
    /// `f₊(τ)`.
    FPlus,
    /// `ℋ(τ)`.
    Hamiltonian,
    /// `σ(τ)`.
    Sigma,
    /// `φ̂(τ)`.
    Phi,
}

impl Quantity {
    /// All quantities.
    pub const ALL: [Quantity; 7] = [
        Quantity::U,
        Quantity::UPrime,
        Quantity::FMinus,
        Quantity::FPlus,
        Quantity::Hamiltonian,
        Quantity::Sigma,
        Quantity::Phi,
    ];

    /// Short name used on the command line.
    pub fn name(self) -> &'static str {
        match self {
            Quantity::U => "u",
            Quantity::UPrime => "u_prime",
            Quantity::FMinus => "f_minus",
            Quantity::FPlus => "f_plus",
            Quantity::Hamiltonian => "hamiltonian",
            Quantity::Sigma => "sigma",
            Quantity::Phi => "phi",
        }
    }

    /// Inverse of [`Quantity::name`].
    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|q| q.name() == s)
    }
}

/// `c·x^{power}·exp(κ x^{-2})`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpTerm {
    /// Prefactor.
    pub coeff: C64,
    /// Power of `x`.
    pub power: i32,
    /// `κ = −s(ik·(3√3/2) + 9/2)(εb)^{1/3}`.
    pub kappa: C64,
}

impl ExpTerm {
    /// Value at `x`.
    pub fn eval(&self, x: C64) -> C64 {
        self.coeff * x.powi(self.power) * (self.kappa / (x * x)).exp()
    }

    /// `|exp(κ x^{-2})|`.
    pub fn magnitude(&self, x: C64) -> f64 {
        (self.kappa / (x * x)).exp().norm()
    }
}

/// The non-oscillating pieces of the phase expansion.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiParts {
    /// Sign `χ` with `φ̂ = χ·(bracket)`.
    pub chi: f64,
    /// Constant in the bracket, excluding `i𝔏`.
    pub constant: C64,
    /// Coefficient of `ln x` in the bracket.
    pub log_x: C64,
    /// Laurent part of the bracket: the `x^{-2}` term and `−iΣ(2ν_m + Λ_m)x^m`.
    pub series: Laurent,
}

/// Coefficient tables, signs and constants for one regime.
#[derive(Debug, Clone)]
pub struct RayExpansion {
    /// Regime.
    pub regime: RegimeLabel,
    /// Equation parameters.
    pub params: Parameters,
    /// `λ`.
    pub lambda: C64,
    /// Phase sign `s` of the exponential term and of the phase expansion.
    pub s: f64,
    /// Sign entering the power series of `f±`, `ℋ` and `σ`.
    pub s_series: f64,
    /// `a` on the real axis, `−a` on the imaginary axis.
    pub a_eff: C64,
    /// Derived constants.
    pub dc: DerivedConstants,
    coeffs: RayCoefficients,
    phase_coeffs: RayCoefficients,
    depth: usize,
}

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

impl RayExpansion {
    /// Tables deep enough for truncation orders up to `n` plus the error proxy.
    pub fn new(params: &Parameters, regime: RegimeLabel, n: usize) -> Result<Self> {
        regime.check_params(params)?;
        let cap = max_order();
        if n > cap {
            return Err(Dp3Error::InvalidParameters(format!(
                "truncation order {n} exceeds the cap {cap} (set DP3_MAX_N to raise it)"
            )));
        }
        let hatted = regime.axis == Axis::Imaginary;
        let pl = if hatted {
            Pipeline::hatted(params, regime.k, regime.eps2)?
        } else {
            Pipeline::real(params, regime.k, regime.eps2)?
        };
        let depth = n + 4;
        let s_series = if hatted { -1.0 } else { 1.0 };
        let phase_coeffs = pl.all(depth, false);
        let coeffs = if s_series == pl.s2 {
            phase_coeffs.clone()
        } else {
            Pipeline { s2: s_series, ..pl }.all(depth, false)
        };
        Ok(Self {
            regime,
            params: *params,
            lambda: regime.lambda(),
            s: regime.sign(),
            s_series,
            a_eff: pl.a,
            dc: derived_constants(params, regime.k)?,
            coeffs,
            phase_coeffs,
            depth,
        })
    }

    fn check_n(&self, n: usize) {
        assert!(n + 2 <= self.depth, "order {n} beyond table depth {}", self.depth);
    }

    /// Ray variable `x = (τ/λ)^{-1/3}`.
    pub fn x_of(&self, tau: C64) -> C64 {
        principal_cbrt(tau / self.lambda).inv()
    }

    /// `μ = c₀,k/λ`, the leading coefficient of `u` in `x^{-1}`.
    pub fn mu(&self) -> C64 {
        self.dc.c0k / self.lambda
    }

    /// Raw coefficient tables of the ray.
    pub fn coefficients(&self) -> &RayCoefficients {
        &self.coeffs
    }

    /// `u*` truncated after `𝔲_N`.
    pub fn u_series(&self, n: usize) -> Laurent {
        self.check_n(n);
        let mut c = vec![real(1.0), real(0.0)];
        c.extend_from_slice(&self.coeffs.u[..=n]);
        Laurent::new(-1, c).scale(self.mu())
    }

    /// Term-wise `d/dτ` of [`RayExpansion::u_series`].
    pub fn u_prime_series(&self, n: usize) -> Laurent {
        self.u_series(n)
            .deriv()
            .shift(4)
            .scale(-1.0 / (3.0 * self.lambda))
    }

    fn rho_omega(&self) -> C64 {
        self.dc.cbrt_eb * self.dc.omega
    }

    /// `2f₋*` truncated after `𝔯_N`.
    pub fn two_f_minus_series(&self, n: usize) -> Laurent {
        self.check_n(n);
        let (a, s) = (self.a_eff, self.s_series);
        let mut c = vec![real(-2.0), real(0.0)];
        c.extend_from_slice(&self.coeffs.r[..=n]);
        let tail = Laurent::new(-2, c).scale(I * s * self.rho_omega() / 2.0);
        &Laurent::constant(-I * (s * a - I / 2.0), tail.prec()) + &tail
    }

    /// `𝔣*`, the expansion of `(i4/(εb)) f₊`, truncated after index `N`.
    pub fn scaled_f_plus_series(&self, n: usize) -> Laurent {
        self.check_n(n);
        let (a, s) = (self.a_eff, self.s_series);
        let mut c = vec![real(1.0), real(0.0)];
        for m in 0..=n {
            c.push(self.coeffs.r[m] / 2.0 + 2.0 * self.coeffs.w[m]);
        }
        let tail = Laurent::new(-2, c).scale(I * s * self.rho_omega());
        &Laurent::constant(I * (s * a + I / 2.0), tail.prec()) + &tail
    }

    fn a_prime(&self) -> C64 {
        self.a_eff - I * self.s_series / 2.0
    }

    fn bracket(&self, m: usize) -> C64 {
        let ap = self.a_prime();
        let c = &self.coeffs;
        let mut acc = -4.0 * ap * c.u[m + 2] + self.dc.alpha_sq * c.d[m];
        for p in 0..=m {
            acc += (c.h[p] - 4.0 * ap * c.u[p]) * c.w[m - p];
        }
        acc
    }

    /// `ℋ*` truncated after index `N`.
    pub fn hamiltonian_series(&self, n: usize) -> Laurent {
        self.check_n(n);
        let ap = self.a_prime();
        let rho = self.dc.cbrt_eb;
        let mut c = vec![real(0.0); n + 7];
        c[0] = 3.0 * rho * rho * self.dc.omega.conj();
        c[2] = 2.0 * self.rho_omega() * ap;
        c[4] = (ap * ap - 1.0 / 3.0) / 6.0;
        for m in 0..=n {
            c[m + 6] = self.dc.alpha_sq * self.bracket(m);
        }
        Laurent::new(-1, c).scale(1.0 / self.lambda)
    }

    /// `σ*` truncated after index `N`.
    pub fn sigma_series(&self, n: usize) -> Laurent {
        self.check_n(n);
        let (a, s) = (self.a_eff, self.s_series);
        let rho = self.dc.cbrt_eb;
        let one_isa = 1.0 + I * s * a;
        let mut c = vec![real(0.0); n + 7];
        c[0] = 3.0 * rho * rho * self.dc.omega.conj();
        c[2] = -I * s * 2.0 * self.rho_omega() * one_isa;
        c[4] = (one_isa * one_isa + 1.0 / 3.0) / 3.0;
        for m in 0..=n {
            c[m + 6] = self.dc.alpha_sq * (self.bracket(m) + I * s * self.coeffs.r[m + 2]);
        }
        Laurent::new(-4, c)
    }

    /// Bracketed expansion of `φ̂` with the sum truncated after index `N`.
    pub fn phi_parts(&self, n: usize) -> PhiParts {
        self.check_n(n);
        let (a, s) = (self.a_eff, self.s);
        let k = self.regime.k.f();
        let rho = self.dc.cbrt_eb;
        let mut c = vec![real(0.0); n + 3];
        c[0] = I * 1.5 * k * (3f64.sqrt() + I * k) * s * rho;
        for m in 2..=n {
            c[m + 2] = -I * (2.0 * self.phase_coeffs.nu[m] + self.phase_coeffs.log[m]);
        }
        let ln_c = real(2.0 / self.dc.sixth_abs_eb).ln() - I * PI * k / 3.0;
        PhiParts {
            chi: match self.regime.axis {
                Axis::Real => s,
                Axis::Imaginary => -s,
            },
            constant: -PI * k + 2.0 * s * a * ln_c,
            log_x: -4.0 * s * a,
            series: Laurent::new(-2, c),
        }
    }

    /// `S = s⁰₀ − i e^{−sπa}` and `D = (2+√3)^{−iksa}` with `a` effective.
    fn s_and_d(&self, s00: C64) -> (C64, C64) {
        let (a, s) = (self.a_eff, self.s);
        let k = self.regime.k.f();
        (
            s00 - I * (-s * PI * a).exp(),
            two_plus_sqrt3_pow(-I * k * s * a),
        )
    }

    fn kappa(&self) -> C64 {
        let k = self.regime.k.f();
        -self.s * (I * k * self.dc.theta_coeff + self.dc.beta_coeff)
    }

    /// Exponentially small term of `quantity` for Stokes multiplier `s00`.
    ///
    /// For [`Quantity::FPlus`] the term belongs to `𝔣*` and for
    /// [`Quantity::FMinus`] to `2f₋*`; for [`Quantity::Phi`] it belongs to the
    /// bracket of [`PhiParts`]. [`Quantity::UPrime`] is not a single term and is
    /// rejected.
    pub fn exp_term(&self, quantity: Quantity, s00: C64) -> Result<ExpTerm> {
        let k = self.regime.k.f();
        let (sf, d) = self.s_and_d(s00);
        let sqrt_pi = PI.sqrt();
        let b16 = self.dc.sixth_abs_eb;
        let e4 = cis(PI * k / 4.0);
        let e3 = cis(PI * k / 3.0);
        let zeta = self.s * self.s_series;
        let r31k = (3f64.sqrt() + zeta).powf(k);
        let two_k2 = 2f64.powf(k / 2.0);
        let q14 = 3f64.powf(0.25);
        let q34 = 3f64.powf(0.75);
        let common = b16 * e4 * e3 * sf / (sqrt_pi * two_k2 * d);
        let (coeff, power) = match quantity {
            Quantity::U => (
                -I * self.params.eps() * self.dc.sqrt_abs_eb * e4 * sf
                    / (sqrt_pi * 2f64.powf(1.5) * q14 * d * self.lambda),
                0,
            ),
            Quantity::FMinus => (-k * common * r31k / q14, -1),
            Quantity::FPlus => (
                b16 * e4 * e3 * (zeta * 2f64.powf((k + 1.0) / 2.0) - k * r31k) * sf
                    / (sqrt_pi * two_k2 * q14 * d),
                -1,
            ),
            Quantity::Hamiltonian => (-zeta * common * r31k / (q34 * self.lambda), 2),
            Quantity::Sigma => (-common * r31k * (zeta + k * 3f64.sqrt()) / q34, -1),
            Quantity::Phi => (
                -k * cis(-PI * k / 3.0) * e4 * sf
                    / (d * (2.0 * PI).sqrt() * q34 * b16),
                1,
            ),
            Quantity::UPrime => {
                return Err(Dp3Error::Domain(
                    "u' has no single exponential term; use eval_u_prime_full".into(),
                ))
            }
        };
        Ok(ExpTerm {
            coeff,
            power,
            kappa: self.kappa(),
        })
    }

    /// The power series of a non-phase quantity in the normalization of the expansions.
    pub fn power_series(&self, quantity: Quantity, n: usize) -> Result<Laurent> {
        Ok(match quantity {
            Quantity::U => self.u_series(n),
            Quantity::UPrime => self.u_prime_series(n),
            Quantity::FMinus => self.two_f_minus_series(n),
            Quantity::FPlus => self.scaled_f_plus_series(n),
            Quantity::Hamiltonian => self.hamiltonian_series(n),
            Quantity::Sigma => self.sigma_series(n),
            Quantity::Phi => {
                return Err(Dp3Error::Domain(
                    "the phase is not a Laurent series; use phi_parts".into(),
                ))
            }
        })
    }

    /// Smallest-term truncation order for `u` at `τ`, bounded by the table depth.
    pub fn optimal_order(&self, tau: C64) -> usize {
        let x = self.x_of(tau).norm();
        let top = self.depth - 2;
        let mut best = (f64::INFINITY, top);
        for m in 0..=top {
            let c = self.coeffs.u[m].norm();
            if c == 0.0 {
                continue;
            }
            let t = c * x.powi(m as i32);
            if t < best.0 {
                best = (t, m);
            }
        }
        best.1.saturating_sub(1).min(top)
    }
}

/// Monodromy data resolved to `s⁰₀`, with the case hypothesis enforced.
pub fn resolve_s00(params: &Parameters, regime: &RegimeLabel, mono: &MonodromyInput) -> Result<C64> {
    match mono {
        MonodromyInput::S00(s) => Ok(*s),
        MonodromyInput::Point(p) => {
            transformed_point(params, regime, p)?;
            Ok(p.s00)
        }
    }
}

/// `apply_symmetry(label(regime), p)` after checking `a` and the case of `k`.
pub fn transformed_point(
    params: &Parameters,
    regime: &RegimeLabel,
    p: &MonodromyPoint,
) -> Result<MonodromyPoint> {
    if (p.a - params.a).norm() > 1e-12 * (1.0 + params.a.norm()) {
        return Err(Dp3Error::InvalidParameters(format!(
            "monodromy point has a = {}, parameters have a = {}",
            p.a, params.a
        )));
    }
    let q = apply_symmetry(regime.symmetry_label(), p)?;
    let tag = classify(&q)?;
    let wanted = if regime.k == BranchIndex::PLUS {
        Case::CaseIiKplus
    } else {
        Case::CaseIiiKminus
    };
    if tag.case == Case::CaseI {
        return Err(Dp3Error::InvalidCase(format!(
            "transformed point is in case (i) (g11*g22 != 0); regime {regime} needs {wanted:?}"
        )));
    }
    if tag.case != wanted {
        return Err(Dp3Error::InvalidCase(format!(
            "transformed point is in {:?}, regime {regime} needs {wanted:?}",
            tag.case
        )));
    }
    Ok(q)
}

/// A pseudo-random monodromy point satisfying the hypothesis of `regime`.
///
/// Candidates are images of case (ii) and case (iii) points under the symmetry
/// maps; the first one whose transformed point has the case required by `k` is
/// returned.
pub fn sample_regime_point(params: &Parameters, regime: &RegimeLabel, seed: u64) -> Result<MonodromyPoint> {
    regime.check_params(params)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut modulus = || C64::from_polar(rng.gen_range(0.2..=2.0), rng.gen_range(0.0..2.0 * PI));
    let (s00, g) = (modulus(), modulus());
    let a = params.a;
    for aq in [a, -a] {
        for q in [complete_case2(aq, s00, g)?, complete_case3(aq, s00, g)?] {
            for label in enumerate_labels() {
                let p = apply_symmetry(label, &q)?;
                if (p.a - a).norm() <= 1e-14 * (1.0 + a.norm())
                    && transformed_point(params, regime, &p).is_ok()
                {
                    return Ok(MonodromyPoint { a, ..p });
                }
            }
        }
    }
    Err(Dp3Error::InvalidCase(format!("no admissible point found for regime {regime}")))
}

/// `(ϑ, β)` at `t` (pass `τ*` on the imaginary axis).
pub fn theta_beta(params: &Parameters, k: BranchIndex, t: C64) -> Result<(C64, C64)> {
    let dc = derived_constants(params, k)?;
    let t13 = tau_cbrt(t);
    let t23 = t13 * t13;
    Ok((dc.theta_coeff * t23, dc.beta_coeff * t23))
}

/// The amplitude `A_k` of the exponential term of `u`.
pub fn amplitude_a(
    params: &Parameters,
    k: BranchIndex,
    s00: C64,
    regime: &RegimeLabel,
) -> Result<AmplitudeA> {
    let mut r = *regime;
    r.k = k;
    let ray = RayExpansion::new(params, r, 0)?;
    let e = ray.exp_term(Quantity::U, s00)?;
    Ok(AmplitudeA {
        value: e.coeff / ray.mu(),
        k,
        s00,
        regime: r,
    })
}

fn assemble(
    tau: C64,
    n: usize,
    x: C64,
    full: &Laurent,
    truncated: &Laurent,
    exp: Option<&ExpTerm>,
    scale: C64,
) -> TransSeriesEval {
    let power = truncated.eval(x) * scale;
    let proxy = ((full.eval(x) - truncated.eval(x)) * scale).norm();
    let (exp_part, mag) = match exp {
        Some(e) => (e.eval(x) * scale, e.magnitude(x)),
        None => (C64::new(0.0, 0.0), 0.0),
    };
    TransSeriesEval {
        tau,
        power_part: power,
        exp_part,
        total: power + exp_part,
        order_n: n,
        next_term_proxy: proxy,
        exp_magnitude: mag,
    }
}

/// Evaluates a non-phase quantity.
pub fn evaluate(
    params: &Parameters,
    regime: &RegimeLabel,
    mono: &MonodromyInput,
    quantity: Quantity,
    tau: C64,
    n: usize,
) -> Result<TransSeriesEval> {
    if quantity == Quantity::Phi {
        return Err(Dp3Error::Domain("use eval_phi for the phase".into()));
    }
    if tau.norm() == 0.0 || !tau.norm().is_finite() {
        return Err(Dp3Error::Domain(format!("tau must be finite and non-zero, got {tau}")));
    }
    let s00 = resolve_s00(params, regime, mono)?;
    let ray = RayExpansion::new(params, *regime, n)?;
    let x = ray.x_of(tau);
    let full = ray.power_series(quantity, n + 2)?;
    let truncated = ray.power_series(quantity, n)?;
    match quantity {
        Quantity::UPrime => {
            let e = ray.exp_term(Quantity::U, s00)?;
            let mut out = assemble(tau, n, x, &full, &truncated, None, C64::new(1.0, 0.0));
            let q = f64::from(e.power);
            let d = e.eval(x)
                * (-x.powi(4) / (3.0 * ray.lambda))
                * (q / x - 2.0 * e.kappa / x.powi(3));
            out.exp_part = d;
            out.total = out.power_part + d;
            out.exp_magnitude = e.magnitude(x);
            Ok(out)
        }
        Quantity::FMinus => {
            let e = ray.exp_term(quantity, s00)?;
            Ok(assemble(tau, n, x, &full, &truncated, Some(&e), C64::new(0.5, 0.0)))
        }
        Quantity::FPlus => {
            let e = ray.exp_term(quantity, s00)?;
            let scale = params.b * params.eps() / (4.0 * I);
            Ok(assemble(tau, n, x, &full, &truncated, Some(&e), scale))
        }
        _ => {
            let e = ray.exp_term(quantity, s00)?;
            Ok(assemble(tau, n, x, &full, &truncated, Some(&e), C64::new(1.0, 0.0)))
        }
    }
}

/// `u(τ)`.
pub fn eval_u(
    params: &Parameters,
    regime: &RegimeLabel,
    mono: &MonodromyInput,
    tau: C64,
    n: usize,
) -> Result<TransSeriesEval> {
    evaluate(params, regime, mono, Quantity::U, tau, n)
}

/// Term-wise derivative of the power part of `u`.
pub fn eval_u_prime(params: &Parameters, regime: &RegimeLabel, tau: C64, n: usize) -> Result<C64> {
    let ray = RayExpansion::new(params, *regime, n)?;
    Ok(ray.u_prime_series(n).eval(ray.x_of(tau)))
}

/// `u'(τ)` including the derivative of the exponential factor.
pub fn eval_u_prime_full(
    params: &Parameters,
    regime: &RegimeLabel,
    mono: &MonodromyInput,
    tau: C64,
    n: usize,
) -> Result<TransSeriesEval> {
    evaluate(params, regime, mono, Quantity::UPrime, tau, n)
}

/// `f₋(τ)`.
pub fn eval_f_minus(
    params: &Parameters,
    regime: &RegimeLabel,
    mono: &MonodromyInput,
    tau: C64,
    n: usize,
) -> Result<TransSeriesEval> {
    evaluate(params, regime, mono, Quantity::FMinus, tau, n)
}

/// `f₊(τ)`.
pub fn eval_f_plus(
    params: &Parameters,
    regime: &RegimeLabel,
    mono: &MonodromyInput,
    tau: C64,
    n: usize,
) -> Result<TransSeriesEval> {
    evaluate(params, regime, mono, Quantity::FPlus, tau, n)
}

/// `ℋ(τ)`.
pub fn eval_h(
    params: &Parameters,
    regime: &RegimeLabel,
    mono: &MonodromyInput,
    tau: C64,
    n: usize,
) -> Result<TransSeriesEval> {
    evaluate(params, regime, mono, Quantity::Hamiltonian, tau, n)
}

/// `σ(τ)`.
pub fn eval_sigma(
    params: &Parameters,
    regime: &RegimeLabel,
    mono: &MonodromyInput,
    tau: C64,
    n: usize,
) -> Result<TransSeriesEval> {
    evaluate(params, regime, mono, Quantity::Sigma, tau, n)
}

/// `𝔏_k` from the transformed point: `2 ln(g₁₁' e^{πa'})` or `−2 ln(g₂₂' e^{πa'})`.
pub fn log_connection(params: &Parameters, regime: &RegimeLabel, p: &MonodromyPoint) -> Result<C64> {
    let q = transformed_point(params, regime, p)?;
    let e = (PI * q.a).exp();
    Ok(if regime.k == BranchIndex::PLUS {
        2.0 * (q.g11 * e).ln()
    } else {
        -2.0 * (q.g22 * e).ln()
    })
}

/// `φ̂(τ)`, reported modulo `2π`.
pub fn eval_phi(
    params: &Parameters,
    regime: &RegimeLabel,
    p: &MonodromyPoint,
    tau: C64,
    n: usize,
) -> Result<PhiEval> {
    if tau.norm() == 0.0 || !tau.norm().is_finite() {
        return Err(Dp3Error::Domain(format!("tau must be finite and non-zero, got {tau}")));
    }
    let l = log_connection(params, regime, p)?;
    let ray = RayExpansion::new(params, *regime, n)?;
    let x = ray.x_of(tau);
    let parts = ray.phi_parts(n);
    let full = ray.phi_parts(n + 2);
    let chi = C64::new(parts.chi, 0.0);
    let e = ray.exp_term(Quantity::Phi, p.s00)?;
    let base = I * l + parts.constant + parts.log_x * x.ln();
    let power = chi * (base + parts.series.eval(x));
    let exp_part = chi * e.eval(x);
    let total = power + exp_part;
    let proxy = (full.series.eval(x) - parts.series.eval(x)).norm();
    let eval = TransSeriesEval {
        tau,
        power_part: power,
        exp_part,
        total,
        order_n: n,
        next_term_proxy: proxy,
        exp_magnitude: e.magnitude(x),
    };
    let two_pi = 2.0 * PI;
    let mut re = total.re.rem_euclid(two_pi);
    if re > PI {
        re -= two_pi;
    }
    Ok(PhiEval {
        eval,
        principal_value: C64::new(re, total.im),
        mod_2pi: true,
    })
}
