//! Independent verification: series oracles, direct integration of the equation,
//! residuals of the defining identities and order-of-decay fits.

pub mod checks;
pub mod ode;
pub mod oracles;

pub use checks::{
    asymptotic_vs_ode, decay_order_fit, exact_solution_deviation, exponential_term_fit, identity_residuals,
    instanton_exponent_check, on_ray, phase_consistency_check, residual_order_check, series_dp3_residual, sigma_form_residual,
    sigma_step, trajectory_sigma_form, DecayFit, ExponentialFit, IdentityResiduals, InstantonReport,
    OdeAgreement, ResidualReport, SigmaFormResidual,
};
pub use ode::{
    dp3_rhs, f_minus, f_plus, hamiltonian, integrate, integrate_grid, integrate_points, phi_rhs,
    sigma, IntegratorStats, State, Trajectory,
};
