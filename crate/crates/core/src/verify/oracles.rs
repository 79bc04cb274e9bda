//! Independent series-arithmetic oracles.
//!
//! Everything here works from first principles: the ansatz is substituted into
//! the equations with [`Laurent`] arithmetic and orders are matched. None of the
//! recurrences of [`crate::coefficients`] are used.
//!
//! Along a ray the independent variable is `x = (τ/λ)^{-1/3}`, so that
//! `τ = λx^{-3}` and `d/dτ = −(x⁴/(3λ)) d/dx`; the solution is
//! `u = μx^{-1}(1 + Σ_m 𝔲_m x^{m+2})`.

use crate::params::{Parameters, C64, I};
use crate::series::Laurent;

/// `d/dτ` of a series in `x` along the ray `τ = λx^{-3}`.
pub fn d_tau(s: &Laurent, lambda: C64) -> Laurent {
    s.deriv().shift(4).scale(-1.0 / (3.0 * lambda))
}

/// Multiplies a series by `1/τ = x³/λ`.
pub fn over_tau(s: &Laurent, lambda: C64) -> Laurent {
    s.shift(3).scale(1.0 / lambda)
}

/// Multiplies a series by `τ = λx^{-3}`.
pub fn times_tau(s: &Laurent, lambda: C64) -> Laurent {
    s.shift(-3).scale(lambda)
}

/// `μx^{-1}(1 + Σ_{m≤n} 𝔲_m x^{m+2}) + O(x^{n+2})`.
pub fn u_series(mu: C64, u: &[C64]) -> Laurent {
    let mut c = vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
    c.extend_from_slice(u);
    Laurent::new(-1, c).scale(mu)
}

/// The equation multiplied through by `u`:
/// `u u'' − u'² + u u'/τ + 8εu³/τ − 2ab u/τ − b²`.
pub fn dp3_residual_series(params: &Parameters, lambda: C64, us: &Laurent) -> Laurent {
    let up = d_tau(us, lambda);
    let upp = d_tau(&up, lambda);
    let prec = us.prec() + 3;
    let b2 = Laurent::constant(params.b * params.b, prec);
    let cubic = us * us * us;
    let mut f = us * &upp - &up * &up;
    f = f + over_tau(&(us * &up), lambda);
    f = f + over_tau(&cubic, lambda).scale(C64::new(8.0 * params.eps(), 0.0));
    f = f - over_tau(us, lambda).scale(2.0 * params.a * params.b);
    f - b2
}

/// Result of the order-matching solve.
#[derive(Debug, Clone)]
pub struct OrderMatch {
    /// `𝔲₀ … 𝔲_N`.
    pub u: Vec<C64>,
    /// Largest residual coefficient left at orders already matched, relative
    /// to `b²`.
    pub consistency: f64,
}

/// Solves for `𝔲₀ … 𝔲_N` by substituting the ansatz into the equation and
/// matching one order at a time.
///
/// Each new coefficient first enters at `x^{n+2}` through the cubic term, and it
/// enters linearly, so two residual evaluations determine it.
pub fn order_matched_u(params: &Parameters, lambda: C64, mu: C64, n: usize) -> OrderMatch {
    let mut u: Vec<C64> = Vec::with_capacity(n + 1);
    let scale = params.b.norm_sqr();
    let mut consistency: f64 = 0.0;
    for j in 0..=n {
        let p = j as i32 + 2;
        u.push(C64::new(0.0, 0.0));
        let f0 = dp3_residual_series(params, lambda, &u_series(mu, &u));
        u[j] = C64::new(1.0, 0.0);
        let f1 = dp3_residual_series(params, lambda, &u_series(mu, &u));
        let slope = f1.coeff(p) - f0.coeff(p);
        u[j] = -f0.coeff(p) / slope;
        for q in f0.val()..p {
            consistency = consistency.max(f0.coeff(q).norm() / scale);
        }
    }
    OrderMatch { u, consistency }
}

/// `𝔴` as the coefficients of `x^{m+2}` in the series reciprocal of
/// `1 + Σ 𝔲_m x^{m+2}`.
pub fn reciprocal_oracle(u: &[C64]) -> Vec<C64> {
    let s = u_series(C64::new(1.0, 0.0), u).shift(1);
    let r = s.recip();
    (0..u.len()).map(|m| r.coeff(m as i32 + 2)).collect()
}

/// `[x^m] ln(1 + Σ 𝔲_j x^{j+2})` for `m = 0 … u.len() + 1`.
pub fn log_oracle(u: &[C64]) -> Vec<C64> {
    let s = u_series(C64::new(1.0, 0.0), u).shift(1);
    let l = s.ln();
    (0..u.len() as i32 + 2).map(|m| l.coeff(m)).collect()
}

/// `η_j`, read off from the square of the term-wise derivative series
/// `Σ (m+1)𝔲_m x^m` minus `2(j+3)𝔲_{j+2}`.
pub fn eta_oracle(u: &[C64]) -> Vec<C64> {
    let d: Vec<C64> = u
        .iter()
        .enumerate()
        .map(|(m, &z)| z * (m + 1) as f64)
        .collect();
    let ds = Laurent::new(0, d);
    let sq = &ds * &ds;
    (0..u.len().saturating_sub(2))
        .map(|j| sq.coeff(j as i32) - 2.0 * ((j + 3) as f64) * u[j + 2])
        .collect()
}

/// Every derived function of a power-series solution along a ray, computed by its
/// definition.
#[derive(Debug, Clone)]
pub struct DefinitionSeries {
    /// `u`.
    pub u: Laurent,
    /// `u'`.
    pub u_prime: Laurent,
    /// `2f₋ = −i(a − i/2) + τ(u' − ib)/(2u)`.
    pub two_f_minus: Laurent,
    /// `(i4/(εb)) f₊ = i(a + i/2) + τ(u' + ib)/(2u)`.
    pub scaled_f_plus: Laurent,
    /// `ℋ = (a − i/2)b/u + (a − i/2)²/(2τ) + τ(u'² + b²)/(4u²) + 4εu`.
    pub hamiltonian: Laurent,
    /// `σ = τℋ + τ(u' − ib)/(2u) + (ia + 1/2)²/2 + 1/4`.
    pub sigma: Laurent,
    /// `φ̂' = 2a/τ + b/u`.
    pub phi_prime: Laurent,
}

/// Builds [`DefinitionSeries`] from `𝔲₀ … 𝔲_N`.
pub fn definition_series(params: &Parameters, lambda: C64, mu: C64, u: &[C64]) -> DefinitionSeries {
    let a = params.a;
    let b = params.b;
    let us = u_series(mu, u);
    let prec = us.prec() + 6;
    let c = |z: C64| Laurent::constant(z, prec);
    let up = d_tau(&us, lambda);
    let inv_u = us.recip();
    let tau_over_2u = times_tau(&inv_u, lambda).scale(C64::new(0.5, 0.0));
    let two_f_minus = c(-I * (a - I / 2.0)) + &tau_over_2u * &(&up - &c(I * b));
    let scaled_f_plus = c(I * (a + I / 2.0)) + &tau_over_2u * &(&up + &c(I * b));
    let am = a - I / 2.0;
    let inv_u2 = &inv_u * &inv_u;
    let hamiltonian = inv_u.scale(am * b)
        + over_tau(&c(am * am / 2.0), lambda)
        + times_tau(&(&inv_u2 * &(&(&up * &up) + &c(b * b))), lambda).scale(C64::new(0.25, 0.0))
        + us.scale(C64::new(4.0 * params.eps(), 0.0));
    let ia = I * a + 0.5;
    let sigma = times_tau(&hamiltonian, lambda) + &tau_over_2u * &(&up - &c(I * b))
        + c(ia * ia / 2.0 + 0.25);
    let phi_prime = over_tau(&c(2.0 * a), lambda) + inv_u.scale(b);
    DefinitionSeries {
        u: us,
        u_prime: up,
        two_f_minus,
        scaled_f_plus,
        hamiltonian,
        sigma,
        phi_prime,
    }
}

/// Leading term `c·x^{p}` of the exponentially small part of one function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeadingTerm {
    /// Coefficient `c`.
    pub coeff: C64,
    /// Power `p`.
    pub power: i32,
}

/// Leading exponential terms of every derived function, obtained by linearizing
/// the definitions around the power-series solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearResponse {
    /// `2f₋`.
    pub two_f_minus: LeadingTerm,
    /// `(i4/(εb)) f₊`.
    pub scaled_f_plus: LeadingTerm,
    /// `ℋ`.
    pub hamiltonian: LeadingTerm,
    /// `σ`.
    pub sigma: LeadingTerm,
    /// `φ̂`.
    pub phi: LeadingTerm,
}

fn leading(s: &Laurent) -> LeadingTerm {
    let scale = s.coeffs().iter().map(|z| z.norm()).fold(0.0, f64::max);
    let p = (s.val()..s.prec())
        .find(|&p| s.coeff(p).norm() > 1e-9 * scale)
        .unwrap_or(s.val());
    LeadingTerm {
        coeff: s.coeff(p),
        power: p,
    }
}

/// Perturbs `u` by `C·exp(κx^{-2})` and reads off the leading exponentially small
/// term of each derived function from the first variation of its definition.
///
/// With `E = exp(κx^{-2})`, `δu = C·E` and `δu' = C·E·2κx/(3λ)`. For the phase,
/// `δφ̂' = −b δu/u²` is integrated at leading order through
/// `d/dτ(x^{p}E) = x^{p}E·2κx/(3λ)(1 + O(x²))`.
pub fn linear_response(
    params: &Parameters,
    lambda: C64,
    mu: C64,
    u: &[C64],
    c: C64,
    kappa: C64,
) -> LinearResponse {
    let a = params.a;
    let b = params.b;
    let us = u_series(mu, u);
    let prec = us.prec() + 6;
    let k = |z: C64| Laurent::constant(z, prec);
    let up = d_tau(&us, lambda);
    let inv_u = us.recip();
    let inv_u2 = &inv_u * &inv_u;
    let inv_u3 = &inv_u2 * &inv_u;
    let du = k(c);
    let dup = Laurent::monomial(c * 2.0 * kappa / (3.0 * lambda), 1, prec);
    let tau_over_2 = |s: &Laurent| times_tau(s, lambda).scale(C64::new(0.5, 0.0));
    let var_f = |sign: f64| {
        let t = &(&dup * &inv_u) - &(&(&(&up + &k(sign * I * b)) * &inv_u2) * &du);
        tau_over_2(&t)
    };
    let d2fm = var_f(-1.0);
    let dfp = var_f(1.0);
    let am = a - I / 2.0;
    let dh_du = inv_u2.scale(-am * b)
        - times_tau(&(&inv_u3 * &(&(&up * &up) + &k(b * b))), lambda).scale(C64::new(0.5, 0.0))
        + k(C64::new(4.0 * params.eps(), 0.0));
    let dh_dup = tau_over_2(&(&up * &inv_u2));
    let dh = &(&dh_du * &du) + &(&dh_dup * &dup);
    let dsigma = times_tau(&dh, lambda) + &d2fm;
    let dphi_prime = leading(&(&inv_u2 * &du).scale(-b));
    let phi = LeadingTerm {
        coeff: dphi_prime.coeff * 3.0 * lambda / (2.0 * kappa),
        power: dphi_prime.power - 1,
    };
    LinearResponse {
        two_f_minus: leading(&d2fm),
        scaled_f_plus: leading(&dfp),
        hamiltonian: leading(&dh),
        sigma: leading(&dsigma),
        phi,
    }
}
