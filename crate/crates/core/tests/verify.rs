use dp3_core::asymptotics::RegimeLabel;
use dp3_core::verify::{
    asymptotic_vs_ode, decay_order_fit, dp3_rhs, exact_solution_deviation, identity_residuals,
    instanton_exponent_check, integrate_grid, sigma_form_residual, sigma_step, trajectory_sigma_form,
    State,
};
use dp3_core::{BranchIndex, Parameters, C64};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn generic(b: f64) -> Parameters {
    Parameters::new(c(0.3, 0.1), c(b, 0.0), 1).unwrap()
}

#[test]
fn decay_fit_recovers_a_power_law() {
    let taus = [40.0, 80.0, 160.0, 320.0];
    let values: Vec<f64> = taus.iter().map(|t: &f64| 3.0 * t.powf(-2.5)).collect();
    let fit = decay_order_fit(&taus, &values, 0.0).unwrap();
    assert!((fit.exponent - 2.5).abs() < 1e-12);
    assert!((fit.log_constant - 3f64.ln()).abs() < 1e-10);
    assert!(!fit.saturated);
}

#[test]
fn decay_fit_flags_values_at_the_noise_floor() {
    let fit = decay_order_fit(&[40.0, 80.0, 160.0], &[1e-8, 1e-12, 1e-16], 1e-15).unwrap();
    assert!(fit.saturated);
    assert!(decay_order_fit(&[1.0, 2.0], &[1.0, 0.5], 0.0).is_err());
}

#[test]
fn pole_of_the_equation_is_refused() {
    assert!(dp3_rhs(&generic(1.0), c(10.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)).is_err());
}

#[test]
fn integration_there_and_back_recovers_the_state() {
    let p = generic(1.0);
    let start = State::new(c(0.8, 0.3), c(0.05, -0.02));
    let out = integrate_grid(&p, c(10.0, 0.0), start, &[c(12.0, 0.0)], 1e-12).unwrap();
    assert!(out.completed());
    let back = integrate_grid(&p, c(12.0, 0.0), out.state(0), &[c(10.0, 0.0)], 1e-12).unwrap();
    assert!((back.u[0] - start.u).norm() < 1e-9);
    assert!((back.u_prime[0] - start.u_prime).norm() < 1e-9);
}

#[test]
fn exact_solution_error_shrinks_with_the_tolerance() {
    let p = Parameters::new(c(0.0, 0.0), c(1e-3, 0.0), 1).unwrap();
    let worst = |tol: f64| {
        let (r, _) = exact_solution_deviation(&p, BranchIndex::PLUS, 100.0, 10.0, 11, tol, 1.0).unwrap();
        r.residuals.iter().cloned().fold(0.0, f64::max)
    };
    let (coarse, fine) = (worst(1e-9), worst(1e-10));
    assert!(coarse / fine > 4.0, "{coarse:e} vs {fine:e}");
    assert!(exact_solution_deviation(&generic(1.0), BranchIndex::PLUS, 100.0, 10.0, 11, 1e-11, 1.0).is_err());
}

#[test]
fn sigma_form_holds_at_twenty_and_fails_for_a_wrong_function() {
    let p = generic(1.0);
    for k in [BranchIndex::PLUS, BranchIndex::MINUS] {
        let run = asymptotic_vs_ode(&p, &RegimeLabel::base(k), c(0.0, 0.0), 12, 30.0, 20.0, 11, 1e-13).unwrap();
        let traj = &run.trajectory;
        let last = traj.len() - 1;
        assert!((traj.tau_grid[last] - c(20.0, 0.0)).norm() < 1e-12);
        let r = trajectory_sigma_form(&p, traj, &[last], 1e-13).unwrap();
        assert!(r[0].relative() <= 1e-6, "k = {}: {:e}", k.value(), r[0].relative());
        assert!(identity_residuals(&p, traj).max() < 1e-9);
    }
    let tau = c(20.0, 0.0);
    let wrong = sigma_form_residual(|t| Ok(t * t), &p, tau, sigma_step(tau)).unwrap();
    assert!(wrong.relative() > 1e-2);
}

#[test]
fn instanton_identities_need_positive_epsilon_b() {
    let p = Parameters::with_labels(c(0.3, 0.1), c(-1.0, 0.0), 1, 1, 1).unwrap();
    assert!(instanton_exponent_check(&p, BranchIndex::PLUS, c(0.5, 0.0), 1e-12).is_err());
    let r = instanton_exponent_check(&generic(2.0), BranchIndex::MINUS, c(0.5, 0.2), 1e-12).unwrap();
    assert!(r.pass);
    assert!(r.power_balance.is_none());
}
