//! Residual checks, order-of-decay fits and the comparison of the asymptotics
//! against direct integration.

use super::ode::{dp3_rhs, integrate_grid, phi_rhs, sigma, State, Trajectory};
use crate::asymptotics::{
    amplitude_a, eval_phi, eval_u, eval_u_prime_full, MonodromyInput, RayExpansion, RegimeLabel,
};
use crate::monodromy::MonodromyPoint;
use crate::coefficients::u_coeffs;
use crate::error::{Dp3Error, Result};
use crate::params::{cis, derived_constants, two_plus_sqrt3_pow, BranchIndex, Parameters, C64, I};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Outcome of one residual check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    /// What was checked.
    pub quantity: String,
    /// Evaluation points.
    pub tau_points: Vec<C64>,
    /// Residual magnitudes at `tau_points`.
    pub residuals: Vec<f64>,
    /// Pointwise bounds, when the check is pointwise.
    pub bounds: Vec<f64>,
    /// Fitted decay exponent `p` of `residual ∝ |τ|^{-p}`, when fitted.
    pub fitted_decay_exponent: Option<f64>,
    /// Expected decay exponent, when one is predicted.
    pub expected_exponent: Option<f64>,
    /// Relative tolerance on the exponent, or the absolute tolerance of a
    /// pointwise check.
    pub tolerance: f64,
    /// Some residual sat at the noise floor.
    pub saturated: bool,
    /// Verdict.
    pub pass: bool,
}

/// Least-squares power-law fit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayFit {
    /// `p` in `value ≈ C|τ|^{-p}`.
    pub exponent: f64,
    /// `ln C`.
    pub log_constant: f64,
    /// Some value was at or below the noise floor.
    pub saturated: bool,
}

/// Slope of `ln|value|` against `ln τ` by least squares, reported as a decay
/// exponent.
pub fn decay_order_fit(taus: &[f64], values: &[f64], noise_floor: f64) -> Result<DecayFit> {
    if taus.len() != values.len() || taus.len() < 3 {
        return Err(Dp3Error::Domain(format!(
            "decay fit needs at least 3 matching points, got {} and {}",
            taus.len(),
            values.len()
        )));
    }
    if taus.iter().any(|&t| t.is_nan() || t <= 0.0) {
        return Err(Dp3Error::Domain("decay fit needs positive abscissae".into()));
    }
    let saturated = values.iter().any(|v| v.is_nan() || v.abs() <= noise_floor);
    let xs: Vec<f64> = taus.iter().map(|t| t.ln()).collect();
    let ys: Vec<f64> = values
        .iter()
        .map(|v| v.abs().max(f64::MIN_POSITIVE).ln())
        .collect();
    let (slope, intercept) = least_squares(&xs, &ys);
    Ok(DecayFit {
        exponent: -slope,
        log_constant: intercept,
        saturated,
    })
}

fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// The point at distance `t` from the origin along the ray of `regime`.
pub fn on_ray(regime: &RegimeLabel, t: f64) -> C64 {
    regime.lambda() * t
}

/// `u'' − rhs(u, u')` for the power part of `u` truncated after `𝔲_N`, with the
/// derivatives taken term by term.
pub fn series_dp3_residual(ray: &RayExpansion, tau: C64, n: usize) -> Result<C64> {
    let x = ray.x_of(tau);
    let up_series = ray.u_prime_series(n);
    let upp_series = up_series.deriv().shift(4).scale(-1.0 / (3.0 * ray.lambda));
    let u = ray.u_series(n).eval(x);
    let up = up_series.eval(x);
    Ok(upp_series.eval(x) - dp3_rhs(&ray.params, tau, u, up)?)
}

/// `Σ|terms|` of the equation evaluated on the truncated power part, the scale
/// of its rounding error.
fn rhs_term_sum(ray: &RayExpansion, tau: C64, n: usize) -> f64 {
    let x = ray.x_of(tau);
    let p = &ray.params;
    let u = ray.u_series(n).eval(x);
    let up = ray.u_prime_series(n).eval(x);
    let eps = p.eps();
    [
        up * up / u,
        up / tau,
        8.0 * eps * u * u / tau,
        2.0 * p.a * p.b / tau,
        p.b * p.b / u,
    ]
    .iter()
    .map(|z| z.norm())
    .sum()
}

/// First index `m > N` with `𝔲_m ≠ 0`, within the table depth.
pub fn first_omitted_index(ray: &RayExpansion, n: usize) -> Option<usize> {
    let u = &ray.coefficients().u;
    let scale = u.iter().map(|z| z.norm()).fold(0.0, f64::max);
    (n + 1..u.len()).find(|&m| u[m].norm() > 1e-13 * scale)
}

/// Decay of the equation residual of the truncated power part against the
/// exponent `(M + 3)/3` predicted by the first omitted index `M`.
pub fn residual_order_check(
    params: &Parameters,
    regime: &RegimeLabel,
    n: usize,
    ladder: &[f64],
    rel_tol: f64,
) -> Result<ResidualReport> {
    let ray = RayExpansion::new(params, *regime, n)?;
    let m = first_omitted_index(&ray, n).ok_or_else(|| {
        Dp3Error::Domain(format!("no non-zero coefficient beyond index {n}"))
    })?;
    let expected = (m as f64 + 3.0) / 3.0;
    let taus: Vec<C64> = ladder.iter().map(|&t| on_ray(regime, t)).collect();
    let mut residuals = Vec::with_capacity(taus.len());
    let mut floor: f64 = 0.0;
    for &tau in &taus {
        residuals.push(series_dp3_residual(&ray, tau, n)?.norm());
        floor = floor.max(4.0 * f64::EPSILON * rhs_term_sum(&ray, tau, n));
    }
    let fit = decay_order_fit(ladder, &residuals, floor)?;
    let pass = (fit.exponent - expected).abs() <= rel_tol * expected;
    Ok(ResidualReport {
        quantity: format!("equation residual, N = {n}"),
        tau_points: taus,
        residuals,
        bounds: Vec::new(),
        fitted_decay_exponent: Some(fit.exponent),
        expected_exponent: Some(expected),
        tolerance: rel_tol,
        saturated: fit.saturated,
        pass,
    })
}

/// Integrates the `a = 0` solution `c₀,k τ^{1/3}` from `τ_hi` to `τ_lo` along
/// the positive real axis and reports the relative deviation at `points`
/// equally spaced points against `bound`.
pub fn exact_solution_deviation(
    params: &Parameters,
    k: BranchIndex,
    tau_hi: f64,
    tau_lo: f64,
    points: usize,
    rel_tol: f64,
    bound: f64,
) -> Result<(ResidualReport, Trajectory)> {
    if params.a != C64::new(0.0, 0.0) {
        return Err(Dp3Error::InvalidParameters(format!(
            "the closed-form solution needs a = 0, got {}",
            params.a
        )));
    }
    if !(tau_hi > 0.0 && tau_lo > 0.0) {
        return Err(Dp3Error::Domain("the end points must be positive".into()));
    }
    let c0 = derived_constants(params, k)?.c0k;
    let exact = |t: f64| c0 * t.cbrt();
    let start = C64::new(tau_hi, 0.0);
    let state = State::new(exact(tau_hi), c0 / (3.0 * tau_hi.cbrt().powi(2)));
    let traj = super::ode::integrate_points(params, start, state, C64::new(tau_lo, 0.0), points, rel_tol)?;
    let residuals: Vec<f64> = traj
        .tau_grid
        .iter()
        .zip(&traj.u)
        .map(|(t, u)| (u - exact(t.re)).norm() / exact(t.re).norm())
        .collect();
    let pass = traj.completed() && residuals.iter().all(|&r| r <= bound);
    let report = ResidualReport {
        quantity: format!("a = 0 solution, k = {:+}, rel_tol = {rel_tol:e}", k.value()),
        tau_points: traj.tau_grid.clone(),
        bounds: vec![bound; residuals.len()],
        residuals,
        fitted_decay_exponent: None,
        expected_exponent: None,
        tolerance: bound,
        saturated: false,
        pass,
    };
    Ok((report, traj))
}

/// Decay of `dφ̂/dτ − (2a/τ + b/u)` with both expansions truncated at order `N`,
/// the derivative taken by Richardson-extrapolated central differences along
/// the ray. The expected exponent is `(M + 3)/3` with `M` the smaller of the
/// first omitted indices of the two expansions.
pub fn phase_consistency_check(
    params: &Parameters,
    regime: &RegimeLabel,
    point: &MonodromyPoint,
    n: usize,
    ladder: &[f64],
    rel_tol: f64,
) -> Result<ResidualReport> {
    let ray = RayExpansion::new(params, *regime, n)?;
    let phase = ray.phi_parts(n + 2);
    let c = phase.series.coeffs();
    let phase_scale = c.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let m_phi = (n + 1..=n + 2).find(|&m| c[m + 2].norm() > 1e-13 * phase_scale);
    let m_u = first_omitted_index(&ray, n);
    let m = match (m_u, m_phi) {
        (Some(x), Some(y)) => x.min(y),
        (Some(x), None) | (None, Some(x)) => x,
        (None, None) => {
            return Err(Dp3Error::Domain(format!("no non-zero coefficient beyond index {n}")))
        }
    };
    let expected = (m as f64 + 3.0) / 3.0;
    let mono = MonodromyInput::S00(point.s00);
    let phi = |t: C64| -> Result<C64> { Ok(eval_phi(params, regime, point, t, n)?.eval.power_part) };
    let taus: Vec<C64> = ladder.iter().map(|&t| on_ray(regime, t)).collect();
    let mut residuals = Vec::with_capacity(taus.len());
    let mut floor: f64 = 0.0;
    for &tau in &taus {
        let h = 1e-2 * tau.norm();
        let dir = tau / tau.norm();
        let central = |h: f64| -> Result<C64> {
            let step = dir * h;
            Ok((phi(tau + step)? - phi(tau - step)?) / (2.0 * step))
        };
        let (dh, dq) = (central(h)?, central(h / 2.0)?);
        let d = (4.0 * dq - dh) / 3.0;
        let u = eval_u(params, regime, &mono, tau, n)?.power_part;
        let target = phi_rhs(params, tau, u);
        residuals.push((d - target).norm());
        floor = floor.max(64.0 * f64::EPSILON * phi(tau)?.norm() / h);
    }
    let fit = decay_order_fit(ladder, &residuals, floor)?;
    Ok(ResidualReport {
        quantity: format!("phase derivative along {regime}, N = {n}"),
        tau_points: taus,
        residuals,
        bounds: Vec::new(),
        fitted_decay_exponent: Some(fit.exponent),
        expected_exponent: Some(expected),
        tolerance: rel_tol,
        saturated: fit.saturated,
        pass: (fit.exponent - expected).abs() <= rel_tol * expected,
    })
}

/// Both sides of `(τσ'' − σ')² = 2(2σ − τσ')σ'² + i32εbτ((1 + ia)σ' + i2εbτ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SigmaFormResidual {
    /// Evaluation point.
    pub tau: C64,
    /// Left-hand side.
    pub lhs: C64,
    /// Right-hand side.
    pub rhs: C64,
    /// `lhs − rhs`.
    pub residual: C64,
}

impl SigmaFormResidual {
    /// `|lhs − rhs| / |lhs|`.
    pub fn relative(&self) -> f64 {
        self.residual.norm() / self.lhs.norm()
    }
}

/// Default finite-difference step: `h = max(10⁻³, 10⁻⁶|τ|)`.
pub fn sigma_step(tau: C64) -> f64 {
    (1e-6 * tau.norm()).max(1e-3)
}

/// The σ-form residual with `σ'`, `σ''` from central differences at steps `h`
/// and `h/2` along the ray through `τ`, combined by Richardson extrapolation.
pub fn sigma_form_residual<F>(
    sigma_fn: F,
    params: &Parameters,
    tau: C64,
    h: f64,
) -> Result<SigmaFormResidual>
where
    F: Fn(C64) -> Result<C64>,
{
    let dir = tau / tau.norm();
    let s0 = sigma_fn(tau)?;
    let diffs = |h: f64| -> Result<(C64, C64)> {
        let step = dir * h;
        let sp = sigma_fn(tau + step)?;
        let sm = sigma_fn(tau - step)?;
        Ok(((sp - sm) / (2.0 * step), (sp - 2.0 * s0 + sm) / (step * step)))
    };
    let (d1h, d2h) = diffs(h)?;
    let (d1q, d2q) = diffs(h / 2.0)?;
    let d1 = (4.0 * d1q - d1h) / 3.0;
    let d2 = (4.0 * d2q - d2h) / 3.0;
    let eb = params.eps() * params.b;
    let lhs = (tau * d2 - d1) * (tau * d2 - d1);
    let rhs = 2.0 * (2.0 * s0 - tau * d1) * d1 * d1
        + I * 32.0 * eb * tau * ((1.0 + I * params.a) * d1 + I * 2.0 * eb * tau);
    Ok(SigmaFormResidual {
        tau,
        lhs,
        rhs,
        residual: lhs - rhs,
    })
}

/// Pointwise residuals of the identities linking the derived functions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityResiduals {
    /// `|(i4/(εb))f₊ − 2f₋ − iτ(2a/τ + b/u)|` relative to the largest term.
    pub f_corollary: Vec<f64>,
    /// `|σ − (τℋ + 2f₋ + i(a − i/2) + (ia + 1/2)²/2 + 1/4)|` relative to the
    /// largest term.
    pub sigma_relation: Vec<f64>,
}

impl IdentityResiduals {
    /// Largest entry of both sequences.
    pub fn max(&self) -> f64 {
        self.f_corollary
            .iter()
            .chain(&self.sigma_relation)
            .fold(0.0, |m, &v| m.max(v))
    }
}

/// Evaluates [`IdentityResiduals`] on every stored point of a trajectory.
pub fn identity_residuals(params: &Parameters, traj: &Trajectory) -> IdentityResiduals {
    let (a, eb) = (params.a, params.eps() * params.b);
    let mut out = IdentityResiduals {
        f_corollary: Vec::with_capacity(traj.len()),
        sigma_relation: Vec::with_capacity(traj.len()),
    };
    for i in 0..traj.len() {
        let tau = traj.tau_grid[i];
        let fp = I * 4.0 / eb * traj.f_plus[i];
        let fm2 = 2.0 * traj.f_minus[i];
        let ph = I * tau * phi_rhs(params, tau, traj.u[i]);
        let scale = fp.norm().max(fm2.norm()).max(ph.norm());
        out.f_corollary.push((fp - fm2 - ph).norm() / scale);
        let c = I * a + 0.5;
        let terms = [
            tau * traj.h[i],
            fm2,
            I * (a - I / 2.0),
            c * c / 2.0 + 0.25,
        ];
        let sum: C64 = terms.iter().sum();
        let scale = terms
            .iter()
            .map(|z| z.norm())
            .fold(traj.sigma[i].norm(), f64::max);
        out.sigma_relation.push((traj.sigma[i] - sum).norm() / scale);
    }
    out
}

/// σ near stored point `i` of a trajectory, by integrating from that point.
pub fn trajectory_sigma_at(
    params: &Parameters,
    traj: &Trajectory,
    i: usize,
    tau: C64,
    rel_tol: f64,
) -> Result<C64> {
    let t0 = traj.tau_grid[i];
    let s0 = traj.state(i);
    if tau == t0 {
        return Ok(sigma(params, tau, &s0));
    }
    let t = integrate_grid(params, t0, s0, &[tau], rel_tol)?;
    match t.diagnostic {
        Some(d) => Err(Dp3Error::SingularStep {
            tau: tau.to_string(),
            reason: d,
        }),
        None => Ok(t.sigma[0]),
    }
}

/// σ-form residuals at the stored points `indices` of a trajectory.
pub fn trajectory_sigma_form(
    params: &Parameters,
    traj: &Trajectory,
    indices: &[usize],
    rel_tol: f64,
) -> Result<Vec<SigmaFormResidual>> {
    indices
        .iter()
        .map(|&i| {
            let tau = traj.tau_grid[i];
            sigma_form_residual(
                |t| trajectory_sigma_at(params, traj, i, t, rel_tol),
                params,
                tau,
                sigma_step(tau),
            )
        })
        .collect()
}

/// Comparison of a numerical solution with the truncated trans-series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OdeAgreement {
    /// `|u_num − eval_u|` against `10 × next_term_proxy`.
    pub report: ResidualReport,
    /// Smallest `|τ|` down to which every point from the start passes.
    pub crossover_tau: Option<f64>,
    /// `|u_num − power part|` at each point.
    pub power_excess: Vec<f64>,
    /// `|e^{κx^{-2}}|` at each point.
    pub exp_magnitude: Vec<f64>,
    /// The integrated trajectory.
    pub trajectory: Trajectory,
}

/// Initializes `(u, u')` at `τ_hi` from the N-truncated trans-series including the
/// exponential term, integrates down to `τ_lo` along the ray and compares with
/// the trans-series at `points` equally spaced points.
#[allow(clippy::too_many_arguments)]
pub fn asymptotic_vs_ode(
    params: &Parameters,
    regime: &RegimeLabel,
    s00: C64,
    n: usize,
    tau_hi: f64,
    tau_lo: f64,
    points: usize,
    rel_tol: f64,
) -> Result<OdeAgreement> {
    if !(tau_hi > tau_lo && tau_lo > 0.0) || points < 2 {
        return Err(Dp3Error::Domain(format!(
            "need tau_hi > tau_lo > 0 and at least 2 points, got {tau_hi}, {tau_lo}, {points}"
        )));
    }
    let mono = MonodromyInput::S00(s00);
    let start = on_ray(regime, tau_hi);
    let u0 = eval_u(params, regime, &mono, start, n)?.total;
    let up0 = eval_u_prime_full(params, regime, &mono, start, n)?.total;
    let grid: Vec<C64> = (1..points)
        .map(|i| on_ray(regime, tau_hi + (tau_lo - tau_hi) * i as f64 / (points - 1) as f64))
        .collect();
    let mut traj = Trajectory::empty();
    traj.push(params, start, State::new(u0, up0));
    traj.append(integrate_grid(params, start, State::new(u0, up0), &grid, rel_tol)?);

    let mut residuals = Vec::with_capacity(traj.len());
    let mut bounds = Vec::with_capacity(traj.len());
    let mut power_excess = Vec::with_capacity(traj.len());
    let mut exp_magnitude = Vec::with_capacity(traj.len());
    let mut crossover = None;
    let mut unbroken = true;
    for (i, &tau) in traj.tau_grid.iter().enumerate() {
        let e = eval_u(params, regime, &mono, tau, n)?;
        let dev = (traj.u[i] - e.total).norm();
        let bound = 10.0 * e.next_term_proxy;
        unbroken &= dev <= bound;
        if unbroken && i > 0 {
            crossover = Some(tau.norm());
        }
        residuals.push(dev);
        bounds.push(bound);
        power_excess.push((traj.u[i] - e.power_part).norm());
        exp_magnitude.push(e.exp_magnitude);
    }
    let pass = traj.completed() && residuals.iter().zip(&bounds).all(|(r, b)| r <= b);
    Ok(OdeAgreement {
        report: ResidualReport {
            quantity: format!("u along {regime}, N = {n}"),
            tau_points: traj.tau_grid.clone(),
            residuals,
            bounds,
            fitted_decay_exponent: None,
            expected_exponent: None,
            tolerance: 10.0,
            saturated: false,
            pass,
        },
        crossover_tau: crossover,
        power_excess,
        exp_magnitude,
        trajectory: traj,
    })
}

/// Fit of the exponentially small part of a numerical solution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExponentialFit {
    /// `C` with `|u_num − power part| ≈ C|c₀,k||e^{-β(τ) − ikϑ(τ)}|`, by
    /// log-averaging at slope one.
    pub c_fit: f64,
    /// `|A_k|`.
    pub amplitude: f64,
    /// `c_fit / |A_k|`.
    pub ratio: f64,
    /// Free least-squares slope of `ln|u_num − power part|` against
    /// `ln|e^{-β − ikϑ}|`; one for a pure exponential.
    pub slope: f64,
    /// Fit window along the ray.
    pub window: (f64, f64),
    /// Number of fitted points.
    pub points: usize,
    /// `ratio ∈ [1/factor, factor]`.
    pub pass: bool,
}

/// Runs [`asymptotic_vs_ode`] and fits the excess over the power part inside
/// `window` to `C·e^{-β}`, accepting when `C` is within `factor` of `|A_k|`.
#[allow(clippy::too_many_arguments)]
pub fn exponential_term_fit(
    params: &Parameters,
    regime: &RegimeLabel,
    s00: C64,
    n: usize,
    tau_hi: f64,
    window: (f64, f64),
    points: usize,
    rel_tol: f64,
    factor: f64,
) -> Result<ExponentialFit> {
    let run = asymptotic_vs_ode(params, regime, s00, n, tau_hi, window.0, points, rel_tol)?;
    let amp = amplitude_a(params, regime.k, s00, regime)?.value.norm();
    let mu = RayExpansion::new(params, *regime, 0)?.mu().norm();
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for (i, tau) in run.trajectory.tau_grid.iter().enumerate() {
        let t = tau.norm();
        if t >= window.0 - 1e-9 && t <= window.1 + 1e-9 {
            xs.push(run.exp_magnitude[i].ln());
            ys.push(run.power_excess[i].ln());
        }
    }
    if xs.len() < 3 {
        return Err(Dp3Error::Domain("fewer than 3 points inside the fit window".into()));
    }
    let (slope, _) = least_squares(&xs, &ys);
    let log_c = ys.iter().zip(&xs).map(|(y, x)| y - x).sum::<f64>() / xs.len() as f64;
    let c_fit = log_c.exp() / mu;
    let ratio = c_fit / amp;
    Ok(ExponentialFit {
        c_fit,
        amplitude: amp,
        ratio,
        slope,
        window,
        points: xs.len(),
        pass: run.trajectory.completed() && ratio <= factor && ratio >= 1.0 / factor,
    })
}

/// The characteristic-exponent identities obtained by equating coefficients in
/// the Riccati form of the equation (`k = +1`), and the two routes to `A_k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstantonReport {
    /// Branch index.
    pub k: BranchIndex,
    /// Stokes multiplier used for the amplitudes.
    pub s00: C64,
    /// Power balance at `O(τ^{2/3})`: should vanish (`k = +1`).
    pub power_balance: Option<C64>,
    /// Balances at `O(1)` and `O(τ^{-1/3})`: should vanish (`k = +1`).
    pub u_balances: Option<[C64; 2]>,
    /// `A₁ = ℙ/c₀,₁` with `ℙ` solved from the exponential balance (`k = +1`).
    pub amplitude_balance: Option<C64>,
    /// `A_k` from the exponential term of `u` in the trans-series.
    pub amplitude_series: C64,
    /// The closed form of `A_k`.
    pub amplitude_closed_form: C64,
    /// `ι*₀(1)` solved from its balance, with the `𝔲₀(1)` factor on the linear term.
    pub iota0: Option<C64>,
    /// Closed form `ia(1 + ia)(√3 + 1)/(18α₁⁴)`.
    pub iota0_closed_form: Option<C64>,
    /// `ι*₁(1)` solved from its balance.
    pub iota1: Option<C64>,
    /// Largest relative residual over every comparison made.
    pub max_residual: f64,
    /// `max_residual < tol`.
    pub pass: bool,
}

fn rel(x: C64, y: C64) -> f64 {
    let s = x.norm().max(y.norm());
    if s == 0.0 {
        0.0
    } else {
        (x - y).norm() / s
    }
}

/// Evaluates the identities of [`InstantonReport`] on the positive real axis.
pub fn instanton_exponent_check(
    params: &Parameters,
    k: BranchIndex,
    s00: C64,
    tol: f64,
) -> Result<InstantonReport> {
    params.validate()?;
    if params.eb() <= 0.0 {
        return Err(Dp3Error::InvalidParameters(
            "the identities are stated for epsilon*b > 0".into(),
        ));
    }
    let regime = RegimeLabel::base(k);
    let amplitude_series = amplitude_a(params, k, s00, &regime)?.value;
    let dc = derived_constants(params, k)?;
    let (a, b, eps) = (params.a, params.b, params.eps());
    let sq3 = 3f64.sqrt();
    let stokes = s00 - I * (-PI * a).exp();
    let kf = k.f();
    let amplitude_closed_form = I * cis(kf * PI / 4.0) * cis(-kf * PI / 3.0)
        * two_plus_sqrt3_pow(I * kf * a)
        * stokes
        / ((2.0 * PI).sqrt() * 3f64.powf(0.25) * dc.sixth_eb);
    let mut worst = rel(amplitude_series, amplitude_closed_form);
    let mut report = InstantonReport {
        k,
        s00,
        power_balance: None,
        u_balances: None,
        amplitude_balance: None,
        amplitude_series,
        amplitude_closed_form,
        iota0: None,
        iota0_closed_form: None,
        iota1: None,
        max_residual: 0.0,
        pass: false,
    };
    if k == BranchIndex::PLUS {
        let c01 = dc.c0k;
        let alpha = dc.alpha_k;
        let alpha2 = alpha * alpha;
        let eb23 = dc.cbrt_eb * dc.cbrt_eb;
        let eb13 = dc.cbrt_eb;
        let e23 = cis(2.0 * PI / 3.0);
        let em23 = cis(-2.0 * PI / 3.0);
        let u = u_coeffs(params, k, 0, 0, 4)?.values;
        let lead = 8.0 * e23 * c01 / (eps * eb23);
        let lin = (sq3 + 1.0) * (sq3 * a - I / 2.0) / (3.0 * alpha2);

        let power = 8.0 * e23 * c01 * c01 / (eps * eb23) - (sq3 + 1.0) * em23 * b / eb13
            + 2.0 * (sq3 - 1.0) * c01;
        let power_scale = (8.0 * c01 * c01 / eb23).norm();
        worst = worst.max(power.norm() / power_scale);

        let bal0 = 2.0 * lead * u[0] - I * (sq3 + 1.0) * em23 / (3.0 * eb13)
            + 2.0 * (sq3 - 1.0) * u[0]
            - lin;
        let bal1 = (2.0 * lead + 2.0 * (sq3 - 1.0)) * u[1];
        worst = worst.max(bal0.norm() / lin.norm()).max(bal1.norm() / lin.norm());

        let q1 = 2f64.powf(1.5) * 3f64.powf(0.25) * cis(PI / 4.0) * (2.0 + sq3)
            * two_plus_sqrt3_pow(I * a)
            * stokes
            / (2.0 * PI).sqrt();
        let sum = 2.0 * lead + 2.0 * sq3 * (sq3 + 1.0) + 2.0 * (sq3 - 1.0);
        let p = I * 2.0 * q1 * c01 / ((sq3 + 1.0) * alpha) / sum;
        let amplitude_balance = p / c01;
        worst = worst
            .max(rel(amplitude_balance, amplitude_closed_form))
            .max(rel(amplitude_balance, amplitude_series));

        let iota0 = lead * (2.0 * u[2] + u[0] * u[0])
            + I * (sq3 + 1.0) * em23 * u[0] / (3.0 * eb13)
            + 2.0 * (sq3 - 1.0) * u[2]
            - lin * u[0];
        let iota0_closed = I * a * (1.0 + I * a) * (sq3 + 1.0) / (18.0 * alpha2 * alpha2);
        let iota1 = 2.0 * lead * (u[3] + u[0] * u[1])
            + I * 2.0 * (sq3 + 1.0) * em23 * u[1] / (3.0 * eb13)
            + 2.0 * (sq3 - 1.0) * u[3]
            - lin * u[1];
        let iota_scale = (lead * u[0] * u[0]).norm().max(iota0_closed.norm());
        if iota_scale > 0.0 {
            worst = worst
                .max((iota0 - iota0_closed).norm() / iota_scale)
                .max(iota1.norm() / iota_scale);
        }
        report.power_balance = Some(power);
        report.u_balances = Some([bal0, bal1]);
        report.amplitude_balance = Some(amplitude_balance);
        report.iota0 = Some(iota0);
        report.iota0_closed_form = Some(iota0_closed);
        report.iota1 = Some(iota1);
    }
    report.max_residual = worst;
    report.pass = worst < tol;
    Ok(report)
}
