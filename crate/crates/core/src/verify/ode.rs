//! Direct integration of the equation together with the phase equation.
//!
//! The state `(u, u', φ̂)` is advanced along the straight segment from `τ₀` to
//! `τ₁` with an adaptive Dormand–Prince 5(4) pair. The phase obeys
//! `φ̂' = 2a/τ + b/u`.

use crate::error::{Dp3Error, Result};
use crate::params::{Parameters, C64, I};
use serde::{Deserialize, Serialize};

/// `|u|` or `|τ|` below this floor is treated as a pole.
pub const SINGULAR_FLOOR: f64 = 1e-10;

/// `(u, u', φ̂)` at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct State {
    /// `u(τ)`.
    pub u: C64,
    /// `u'(τ)`.
    pub u_prime: C64,
    /// `φ̂(τ)`.
    pub phi: C64,
}

impl State {
    /// State with `φ̂ = 0`.
    pub fn new(u: C64, u_prime: C64) -> Self {
        Self {
            u,
            u_prime,
            phi: C64::new(0.0, 0.0),
        }
    }

    fn to_array(self) -> [C64; 3] {
        [self.u, self.u_prime, self.phi]
    }

    fn from_array(y: [C64; 3]) -> Self {
        Self {
            u: y[0],
            u_prime: y[1],
            phi: y[2],
        }
    }
}

/// `u'' = (u')²/u − u'/τ + (−8εu² + 2ab)/τ + b²/u`.
pub fn dp3_rhs(params: &Parameters, tau: C64, u: C64, u_prime: C64) -> Result<C64> {
    if u.norm() < SINGULAR_FLOOR || tau.norm() < SINGULAR_FLOOR {
        return Err(Dp3Error::SingularStep {
            tau: tau.to_string(),
            reason: format!("|u| = {:e} or |tau| below the floor", u.norm()),
        });
    }
    let (a, b) = (params.a, params.b);
    Ok(u_prime * u_prime / u - u_prime / tau
        + (-8.0 * params.eps() * u * u + 2.0 * a * b) / tau
        + b * b / u)
}

/// `φ̂' = 2a/τ + b/u`.
pub fn phi_rhs(params: &Parameters, tau: C64, u: C64) -> C64 {
    2.0 * params.a / tau + params.b / u
}

fn rhs(params: &Parameters, tau: C64, y: &[C64; 3]) -> Result<[C64; 3]> {
    Ok([y[1], dp3_rhs(params, tau, y[0], y[1])?, phi_rhs(params, tau, y[0])])
}

/// Step statistics of one integration.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct IntegratorStats {
    /// Accepted steps.
    pub steps: usize,
    /// Rejected steps.
    pub rejected: usize,
    /// Largest normalized local error estimate among accepted steps.
    pub max_error_estimate: f64,
}

/// A numerical solution on a grid, with every derived function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    /// Output points, ordered along the path.
    pub tau_grid: Vec<C64>,
    /// `u`.
    pub u: Vec<C64>,
    /// `u'`.
    pub u_prime: Vec<C64>,
    /// `φ̂`.
    pub phi: Vec<C64>,
    /// `ℋ`.
    #[serde(rename = "H")]
    pub h: Vec<C64>,
    /// `f₋`.
    pub f_minus: Vec<C64>,
    /// `f₊`.
    pub f_plus: Vec<C64>,
    /// `σ`.
    pub sigma: Vec<C64>,
    /// Step statistics.
    pub integrator_stats: IntegratorStats,
    /// Set when integration stopped early, with the reason.
    pub diagnostic: Option<String>,
}

/// `ℋ = (a − i/2)b/u + (a − i/2)²/(2τ) + τ(u'² + b²)/(4u²) + 4εu`.
pub fn hamiltonian(params: &Parameters, tau: C64, s: &State) -> C64 {
    let am = params.a - I / 2.0;
    let b = params.b;
    am * b / s.u + am * am / (2.0 * tau) + tau * (s.u_prime * s.u_prime + b * b) / (4.0 * s.u * s.u)
        + 4.0 * params.eps() * s.u
}

/// `f₋ = ½(−i(a − i/2) + τ(u' − ib)/(2u))`.
pub fn f_minus(params: &Parameters, tau: C64, s: &State) -> C64 {
    0.5 * (-I * (params.a - I / 2.0) + tau * (s.u_prime - I * params.b) / (2.0 * s.u))
}

/// `f₊ = (εb/(4i))(i(a + i/2) + τ(u' + ib)/(2u))`.
pub fn f_plus(params: &Parameters, tau: C64, s: &State) -> C64 {
    let scaled = I * (params.a + I / 2.0) + tau * (s.u_prime + I * params.b) / (2.0 * s.u);
    params.eps() * params.b / (4.0 * I) * scaled
}

/// `σ = τℋ + τ(u' − ib)/(2u) + (ia + 1/2)²/2 + 1/4`.
pub fn sigma(params: &Parameters, tau: C64, s: &State) -> C64 {
    let c = I * params.a + 0.5;
    tau * hamiltonian(params, tau, s) + tau * (s.u_prime - I * params.b) / (2.0 * s.u)
        + c * c / 2.0
        + 0.25
}

impl Trajectory {
    pub(crate) fn empty() -> Self {
        Self {
            tau_grid: Vec::new(),
            u: Vec::new(),
            u_prime: Vec::new(),
            phi: Vec::new(),
            h: Vec::new(),
            f_minus: Vec::new(),
            f_plus: Vec::new(),
            sigma: Vec::new(),
            integrator_stats: IntegratorStats::default(),
            diagnostic: None,
        }
    }

    pub(crate) fn push(&mut self, params: &Parameters, tau: C64, s: State) {
        self.tau_grid.push(tau);
        self.u.push(s.u);
        self.u_prime.push(s.u_prime);
        self.phi.push(s.phi);
        self.h.push(hamiltonian(params, tau, &s));
        self.f_minus.push(f_minus(params, tau, &s));
        self.f_plus.push(f_plus(params, tau, &s));
        self.sigma.push(sigma(params, tau, &s));
    }

    /// Appends the points of `other` and adopts its statistics and diagnostic.
    pub(crate) fn append(&mut self, mut other: Trajectory) {
        self.tau_grid.append(&mut other.tau_grid);
        self.u.append(&mut other.u);
        self.u_prime.append(&mut other.u_prime);
        self.phi.append(&mut other.phi);
        self.h.append(&mut other.h);
        self.f_minus.append(&mut other.f_minus);
        self.f_plus.append(&mut other.f_plus);
        self.sigma.append(&mut other.sigma);
        self.integrator_stats = other.integrator_stats;
        self.diagnostic = other.diagnostic;
    }

    /// Number of stored points.
    pub fn len(&self) -> usize {
        self.tau_grid.len()
    }

    /// True when no point is stored.
    pub fn is_empty(&self) -> bool {
        self.tau_grid.is_empty()
    }

    /// The state at stored point `i`.
    pub fn state(&self, i: usize) -> State {
        State {
            u: self.u[i],
            u_prime: self.u_prime[i],
            phi: self.phi[i],
        }
    }

    /// Whether the integration reached the last requested point.
    pub fn completed(&self) -> bool {
        self.diagnostic.is_none()
    }
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

fn comb(y: &[C64; 3], h: C64, terms: &[(f64, &[C64; 3])]) -> [C64; 3] {
    let mut out = *y;
    for (c, k) in terms {
        for i in 0..3 {
            out[i] += h * *c * k[i];
        }
    }
    out
}

/// Adaptive stepper along one straight segment.
struct Stepper<'a> {
    params: &'a Parameters,
    rel_tol: f64,
    abs_tol: f64,
    h: f64,
    stats: IntegratorStats,
}

impl<'a> Stepper<'a> {
    /// Advances `y` from `t0` to `t1` (complex), returning the new state.
    fn advance(&mut self, t0: C64, y0: [C64; 3], t1: C64) -> Result<[C64; 3]> {
        let span = (t1 - t0).norm();
        if span == 0.0 {
            return Ok(y0);
        }
        let dir = (t1 - t0) / span;
        let min_step = 1e-13 * (span + t0.norm());
        let mut s = 0.0;
        let mut y = y0;
        let mut k1 = rhs(self.params, t0, &y)?;
        if self.h <= 0.0 {
            self.h = (1e-3 * span).max(min_step);
        }
        while s < span {
            let last = self.h >= span - s;
            let hs = if last { span - s } else { self.h };
            let t = t0 + dir * s;
            let h = dir * hs;
            let trial = self.try_step(t, &y, &k1, h);
            let (y_new, k7, err) = match trial {
                Ok(v) => v,
                Err(_) => {
                    self.stats.rejected += 1;
                    self.h = hs * 0.25;
                    if self.h < min_step {
                        return Err(Dp3Error::SingularStep {
                            tau: t.to_string(),
                            reason: "step size underflow near a pole".into(),
                        });
                    }
                    continue;
                }
            };
            let factor = if err == 0.0 {
                5.0
            } else {
                (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
            };
            if err <= 1.0 {
                s = if last { span } else { s + hs };
                y = y_new;
                k1 = k7;
                self.stats.steps += 1;
                self.stats.max_error_estimate = self.stats.max_error_estimate.max(err);
                if !last {
                    self.h = hs * factor;
                }
            } else {
                self.stats.rejected += 1;
                self.h = hs * factor.min(1.0);
                if self.h < min_step {
                    return Err(Dp3Error::SingularStep {
                        tau: t.to_string(),
                        reason: "step size underflow near a pole".into(),
                    });
                }
            }
        }
        Ok(y)
    }

    #[allow(clippy::type_complexity)]
    fn try_step(
        &self,
        t: C64,
        y: &[C64; 3],
        k1: &[C64; 3],
        h: C64,
    ) -> Result<([C64; 3], [C64; 3], f64)> {
        let p = self.params;
        let k2 = rhs(p, t + h * C2, &comb(y, h, &[(A21, k1)]))?;
        let k3 = rhs(p, t + h * C3, &comb(y, h, &[(A31, k1), (A32, &k2)]))?;
        let k4 = rhs(p, t + h * C4, &comb(y, h, &[(A41, k1), (A42, &k2), (A43, &k3)]))?;
        let k5 = rhs(
            p,
            t + h * C5,
            &comb(y, h, &[(A51, k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
        )?;
        let k6 = rhs(
            p,
            t + h,
            &comb(y, h, &[(A61, k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]),
        )?;
        let y_new = comb(y, h, &[(B1, k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)]);
        let k7 = rhs(p, t + h, &y_new)?;
        let mut err: f64 = 0.0;
        for i in 0..3 {
            let e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            let sc = self.abs_tol + self.rel_tol * y[i].norm().max(y_new[i].norm());
            err = err.max(e.norm() / sc);
        }
        if !err.is_finite() {
            return Err(Dp3Error::SingularStep {
                tau: t.to_string(),
                reason: "non-finite error estimate".into(),
            });
        }
        Ok((y_new, k7, err))
    }
}

/// Integrates from `(τ₀, state₀)` through every point of `grid` in order,
/// recording the state at each of them.
///
/// On a pole or a step-size underflow the trajectory is truncated at the last
/// point reached and `diagnostic` explains why.
pub fn integrate_grid(
    params: &Parameters,
    tau0: C64,
    state0: State,
    grid: &[C64],
    rel_tol: f64,
) -> Result<Trajectory> {
    params.validate()?;
    if !(rel_tol > 0.0 && rel_tol < 1.0) {
        return Err(Dp3Error::Domain(format!("rel_tol must lie in (0, 1), got {rel_tol}")));
    }
    let mut stepper = Stepper {
        params,
        rel_tol,
        abs_tol: rel_tol * 1e-6,
        h: 0.0,
        stats: IntegratorStats::default(),
    };
    let mut traj = Trajectory::empty();
    let mut t = tau0;
    let mut y = state0.to_array();
    rhs(params, t, &y)?;
    for &target in grid {
        match stepper.advance(t, y, target) {
            Ok(next) => {
                y = next;
                t = target;
                traj.push(params, t, State::from_array(y));
            }
            Err(e) => {
                traj.diagnostic = Some(e.to_string());
                break;
            }
        }
    }
    traj.integrator_stats = stepper.stats;
    Ok(traj)
}

/// Integrates from `τ₀` to `τ₁` with `φ̂(τ₀) = 0`, recording 101 equally spaced
/// points including both endpoints.
pub fn integrate(
    params: &Parameters,
    tau0: C64,
    u0: C64,
    u0_prime: C64,
    tau1: C64,
    rel_tol: f64,
) -> Result<Trajectory> {
    integrate_points(params, tau0, State::new(u0, u0_prime), tau1, 101, rel_tol)
}

/// [`integrate`] with an explicit initial phase and number of equally spaced
/// output points.
pub fn integrate_points(
    params: &Parameters,
    tau0: C64,
    state0: State,
    tau1: C64,
    points: usize,
    rel_tol: f64,
) -> Result<Trajectory> {
    let points = points.max(2);
    let grid: Vec<C64> = (1..points)
        .map(|i| tau0 + (tau1 - tau0) * (i as f64 / (points - 1) as f64))
        .collect();
    let tail = integrate_grid(params, tau0, state0, &grid, rel_tol)?;
    let mut head = Trajectory::empty();
    head.push(params, tau0, state0);
    head.append(tail);
    Ok(head)
}
