use dp3_core::asymptotics::{
    amplitude_a, eval_f_minus, eval_f_plus, eval_h, eval_phi, eval_u, eval_u_prime,
    eval_u_prime_full, sample_regime_point, tau_star, theta_beta, transformed_point, Axis,
    MonodromyInput, Quantity, RayExpansion, RegimeLabel,
};
use dp3_core::monodromy::{apply_symmetry, complete_case1, complete_case2, complete_case3};
use dp3_core::params::{cis, I};
use dp3_core::series::Laurent;
use dp3_core::verify::oracles::{d_tau, definition_series, linear_response, order_matched_u};
use dp3_core::{BranchIndex, Dp3Error, Parameters, C64};
use std::f64::consts::PI;

const KS: [BranchIndex; 2] = [BranchIndex::PLUS, BranchIndex::MINUS];

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn parameter_sets() -> Vec<Parameters> {
    [(1i8, 1.3), (-1, 0.8), (1, -0.7), (-1, -1.1)]
        .into_iter()
        .map(|(eps, b)| Parameters::new(c(0.3, 0.2), c(b, 0.0), eps).unwrap())
        .collect()
}

fn series_gap(a: &Laurent, b: &Laurent, upto: i32) -> f64 {
    let lo = a.val().min(b.val());
    let upto = upto.min(a.prec()).min(b.prec());
    let scale = (lo..upto)
        .map(|p| a.coeff(p).norm().max(b.coeff(p).norm()))
        .fold(f64::MIN_POSITIVE, f64::max);
    (lo..upto)
        .map(|p| (a.coeff(p) - b.coeff(p)).norm())
        .fold(0.0, f64::max)
        / scale
}

/// A point on the ray at distance `r`.
fn on_ray(regime: &RegimeLabel, r: f64) -> C64 {
    regime.lambda() * r
}

#[test]
fn u_coefficients_solve_the_equation_in_every_regime() {
    for p in parameter_sets() {
        for k in KS {
            for r in RegimeLabel::all_for(&p, k) {
                let ray = RayExpansion::new(&p, r, 20).unwrap();
                let m = order_matched_u(&p, ray.lambda, ray.mu(), 20);
                for (j, (x, y)) in m.u.iter().zip(&ray.coefficients().u).enumerate() {
                    let scale = y.norm().max(1e-3);
                    assert!((x - y).norm() / scale < 1e-11, "{r} u_{j}: {x} vs {y}");
                }
            }
        }
    }
}

#[test]
fn power_series_agree_with_definitions_in_every_regime() {
    let n = 12usize;
    for p in parameter_sets() {
        for k in KS {
            for r in RegimeLabel::all_for(&p, k) {
                let ray = RayExpansion::new(&p, r, n).unwrap();
                let u = &ray.coefficients().u[..=n + 2];
                let ds = definition_series(&p, ray.lambda, ray.mu(), u);
                let top = n as i32 + 2;
                let checks = [
                    ("2f-", series_gap(&ds.two_f_minus, &ray.two_f_minus_series(n), top - 2)),
                    ("f+", series_gap(&ds.scaled_f_plus, &ray.scaled_f_plus_series(n), top - 2)),
                    ("H", series_gap(&ds.hamiltonian, &ray.hamiltonian_series(n), top + 5)),
                    ("sigma", series_gap(&ds.sigma, &ray.sigma_series(n), top + 2)),
                    ("u'", series_gap(&ds.u_prime, &ray.u_prime_series(n), top + 3)),
                ];
                for (name, gap) in checks {
                    assert!(gap < 1e-12, "{r} {name}: {gap:e}");
                }
                let parts = ray.phi_parts(n);
                let mut dphi = d_tau(&parts.series, ray.lambda);
                let prec = dphi.prec();
                dphi = dphi
                    + Laurent::monomial(parts.log_x * (-1.0 / (3.0 * ray.lambda)), 3, prec);
                let dphi = dphi.scale(c(parts.chi, 0.0));
                let gap = series_gap(&ds.phi_prime, &dphi, top + 3);
                assert!(gap < 1e-12, "{r} phi': {gap:e}");
            }
        }
    }
}

#[test]
fn f_plus_corollary_holds_through_truncation_order() {
    for p in parameter_sets() {
        for k in KS {
            for r in RegimeLabel::all_for(&p, k) {
                let ray = RayExpansion::new(&p, r, 12).unwrap();
                let lhs = ray.scaled_f_plus_series(12);
                let u_inv = ray.u_series(14).recip();
                let prec = lhs.prec();
                let rhs = &ray.two_f_minus_series(12)
                    + &(&Laurent::constant(I * 2.0 * p.a, prec)
                        + &u_inv.shift(-3).scale(I * p.b * ray.lambda));
                let gap = series_gap(&lhs, &rhs, prec);
                assert!(gap < 1e-12, "{r}: {gap:e}");
            }
        }
    }
}

#[test]
fn exponential_terms_match_linearized_definitions() {
    let s00 = c(0.4, -0.3);
    for p in parameter_sets() {
        for k in KS {
            for r in RegimeLabel::all_for(&p, k) {
                let ray = RayExpansion::new(&p, r, 10).unwrap();
                let eu = ray.exp_term(Quantity::U, s00).unwrap();
                let lr = linear_response(
                    &p,
                    ray.lambda,
                    ray.mu(),
                    &ray.coefficients().u,
                    eu.coeff,
                    eu.kappa,
                );
                let chi = ray.phi_parts(0).chi;
                for (q, t) in [
                    (Quantity::FMinus, lr.two_f_minus),
                    (Quantity::FPlus, lr.scaled_f_plus),
                    (Quantity::Hamiltonian, lr.hamiltonian),
                    (Quantity::Sigma, lr.sigma),
                    (Quantity::Phi, lr.phi),
                ] {
                    let e = ray.exp_term(q, s00).unwrap();
                    let coeff = if q == Quantity::Phi { e.coeff * chi } else { e.coeff };
                    assert_eq!(e.power, t.power, "{r} {}", q.name());
                    let rel = (t.coeff / coeff - 1.0).norm();
                    assert!(rel < 1e-10, "{r} {}: ratio {}", q.name(), t.coeff / coeff);
                }
            }
        }
    }
}

/// Base-regime parameters, `τ`-image and prefactor with `u_R(τ) = c·u_base(T)`.
fn base_image(p: &Parameters, r: &RegimeLabel, tau: C64) -> (Parameters, C64, C64) {
    let (a, b, eps) = (p.a, p.b, p.epsilon);
    let lam = r.lambda();
    let e1 = f64::from(r.eps1);
    match (r.axis, r.eps2 == 0) {
        (Axis::Real, true) => (Parameters::new(a, b, eps).unwrap(), lam * tau, lam),
        (Axis::Real, false) => (Parameters::new(-a, b, -eps).unwrap(), lam * tau, -lam),
        (Axis::Imaginary, false) => (
            Parameters::new(a, -b, eps).unwrap(),
            tau_star(tau, r.eps1),
            -I * e1,
        ),
        (Axis::Imaginary, true) => (
            Parameters::new(-a, -b, -eps).unwrap(),
            tau_star(tau, r.eps1),
            I * e1,
        ),
    }
}

#[test]
fn u_is_the_symmetry_image_of_the_base_regime() {
    for p in parameter_sets() {
        for k in KS {
            for r in RegimeLabel::all_for(&p, k) {
                for seed in 0..3u64 {
                    let pt = sample_regime_point(&p, &r, seed).unwrap();
                    let tau = on_ray(&r, 20.0);
                    let lhs = eval_u(&p, &r, &MonodromyInput::Point(pt), tau, 12).unwrap();
                    let (pb, tb, f) = base_image(&p, &r, tau);
                    let q = apply_symmetry(r.symmetry_label(), &pt).unwrap();
                    let base = RegimeLabel::base(k);
                    let rhs = eval_u(&pb, &base, &MonodromyInput::Point(q), tb, 12).unwrap();
                    let dp = (lhs.power_part - f * rhs.power_part).norm() / lhs.power_part.norm();
                    let de = (lhs.exp_part - f * rhs.exp_part).norm()
                        / lhs.exp_part.norm().max(f64::MIN_POSITIVE);
                    assert!(dp < 1e-12, "{r} seed {seed}: power {dp:e}");
                    assert!(de < 1e-12, "{r} seed {seed}: exp {de:e}");
                }
            }
        }
    }
}

#[test]
fn amplitude_matches_closed_forms_in_the_base_regime() {
    for a in [c(0.0, 0.0), c(0.3, 0.1), c(-0.7, 0.4)] {
        for b in [1.0, 2.5] {
            let p = Parameters::new(a, c(b, 0.0), 1).unwrap();
            let s00 = c(0.2, 0.9);
            let common = (s00 - I * (-PI * a).exp())
                / ((2.0 * PI).sqrt() * 3f64.powf(0.25) * b.powf(1.0 / 6.0));
            let p_ia = (I * a * (2.0 + 3f64.sqrt()).ln()).exp();
            let want_plus = I * cis(PI / 4.0) * cis(-PI / 3.0) * p_ia * common;
            let want_minus = I * cis(-PI / 4.0) * cis(PI / 3.0) / p_ia * common;
            for (k, want) in [(BranchIndex::PLUS, want_plus), (BranchIndex::MINUS, want_minus)] {
                let got = amplitude_a(&p, k, s00, &RegimeLabel::base(k)).unwrap();
                assert!((got.value - want).norm() < 1e-14, "{a} {b}: {} vs {want}", got.value);
            }
        }
    }
}

#[test]
fn amplitude_vanishes_exactly_on_the_truncated_exponent_condition() {
    let a = c(0.3, -0.2);
    for p in [
        Parameters::new(a, c(1.0, 0.0), 1).unwrap(),
        Parameters::new(a, c(-1.0, 0.0), 1).unwrap(),
    ] {
        for k in KS {
            for r in RegimeLabel::all_for(&p, k) {
                let ray = RayExpansion::new(&p, r, 0).unwrap();
                let s00 = I * (-ray.s * PI * ray.a_eff).exp();
                let got = amplitude_a(&p, k, s00, &r).unwrap();
                assert_eq!(got.value, c(0.0, 0.0), "{r}");
                let other = amplitude_a(&p, k, s00 + 0.1, &r).unwrap();
                assert!(other.value.norm() > 0.0);
            }
        }
    }
}

#[test]
fn amplitude_at_zero_a_and_zero_s00() {
    let p = Parameters::new(c(0.0, 0.0), c(1.0, 0.0), 1).unwrap();
    let got = amplitude_a(&p, BranchIndex::PLUS, c(0.0, 0.0), &RegimeLabel::base(BranchIndex::PLUS))
        .unwrap();
    let want = I * cis(PI / 4.0) * cis(-PI / 3.0) * (-I) / ((2.0 * PI).sqrt() * 3f64.powf(0.25));
    assert!((got.value - want).norm() < 1e-15);
}

#[test]
fn theta_beta_examples() {
    let p = Parameters::new(c(0.2, 0.0), c(1.0, 0.0), 1).unwrap();
    let (t, b) = theta_beta(&p, BranchIndex::PLUS, c(1.0, 0.0)).unwrap();
    assert!((t - 1.5 * 3f64.sqrt()).norm() < 1e-15 && (b - 4.5).norm() < 1e-15);
    let (t, b) = theta_beta(&p, BranchIndex::MINUS, c(8.0, 0.0)).unwrap();
    assert!((t - 6.0 * 3f64.sqrt()).norm() < 1e-13 && (b - 18.0).norm() < 1e-13);
    let ts = tau_star(c(0.0, 8.0), 1);
    let (t2, b2) = theta_beta(&p, BranchIndex::PLUS, ts).unwrap();
    assert!((t2 - t).norm() < 1e-13 && (b2 - b).norm() < 1e-13);
}

#[test]
fn zero_a_gives_the_exact_algebraic_solution() {
    let p = Parameters::new(c(0.0, 0.0), c(1.0, 0.0), 1).unwrap();
    let r = RegimeLabel::base(BranchIndex::PLUS);
    let e = eval_u(&p, &r, &MonodromyInput::S00(I), c(8.0, 0.0), 9).unwrap();
    assert!((e.total - cis(-2.0 * PI / 3.0)).norm() < 1e-15);
    assert_eq!(e.exp_part, c(0.0, 0.0));
    let d = eval_u_prime(&p, &r, c(8.0, 0.0), 9).unwrap();
    let want = 0.5 * cis(-2.0 * PI / 3.0) * 8f64.powf(-2.0 / 3.0) / 3.0;
    assert!((d - want).norm() < 1e-15);
}

#[test]
fn hamiltonian_leading_terms_at_zero_a() {
    for eps2 in [0i8, 1] {
        let p = Parameters::new(c(0.0, 0.0), c(if eps2 == 0 { 1.0 } else { -1.0 }, 0.0), 1).unwrap();
        for k in KS {
            let r = RegimeLabel::new(Axis::Real, 0, eps2, eps2, 0, k).unwrap();
            let h = RayExpansion::new(&p, r, 4).unwrap().hamiltonian_series(4);
            let dc = dp3_core::derived_constants(&p, k).unwrap();
            let rho = dc.cbrt_eb;
            assert!((h.coeff(-1) - 3.0 * rho * rho * dc.omega.conj()).norm() < 1e-14);
            assert!((h.coeff(1) - 2.0 * rho * dc.omega * (-I / 2.0)).norm() < 1e-14);
            assert!((h.coeff(3) - (-0.25 - 1.0 / 3.0) / 6.0).norm() < 1e-14);
        }
    }
}

#[test]
fn generic_power_part_uses_only_even_u_coefficients() {
    let p = Parameters::new(c(0.3, 0.1), c(1.0, 0.0), 1).unwrap();
    let ray = RayExpansion::new(&p, RegimeLabel::base(BranchIndex::PLUS), 9).unwrap();
    let u = &ray.coefficients().u;
    for j in [1, 2, 3, 5, 7, 9] {
        assert_eq!(u[j], c(0.0, 0.0));
    }
    for j in [0, 4, 6, 8] {
        assert!(u[j].norm() > 0.0);
    }
}

#[test]
fn u_prime_matches_central_differences() {
    let p = Parameters::new(c(0.3, 0.2), c(1.0, 0.0), 1).unwrap();
    for k in KS {
        for r in RegimeLabel::all_for(&p, k).into_iter().filter(|r| r.ell == 0) {
            let tau = on_ray(&r, 30.0);
            let mono = MonodromyInput::S00(c(0.3, 0.1));
            let step = r.lambda() * 1e-3;
            let up = eval_u(&p, &r, &mono, tau + step, 10).unwrap().total;
            let um = eval_u(&p, &r, &mono, tau - step, 10).unwrap().total;
            let fd = (up - um) / (2.0 * step);
            let exact = eval_u_prime_full(&p, &r, &mono, tau, 10).unwrap().total;
            assert!((fd - exact).norm() < 1e-7 * exact.norm(), "{r}: {fd} vs {exact}");
        }
    }
}

#[test]
fn phase_derivative_matches_its_equation() {
    let p = Parameters::new(c(0.3, 0.2), c(1.0, 0.0), 1).unwrap();
    for k in KS {
        for r in RegimeLabel::all_for(&p, k).into_iter().filter(|r| r.ell == 0) {
            let pt = sample_regime_point(&p, &r, 7).unwrap();
            let tau = on_ray(&r, 40.0);
            let step = r.lambda() * 1e-3;
            let f = |t: C64| eval_phi(&p, &r, &pt, t, 12).unwrap().eval.total;
            let fd = (f(tau + step) - f(tau - step)) / (2.0 * step);
            let u = eval_u(&p, &r, &MonodromyInput::Point(pt), tau, 12).unwrap().total;
            let want = 2.0 * p.a / tau + p.b / u;
            assert!((fd - want).norm() < 1e-6 * want.norm(), "{r}: {fd} vs {want}");
        }
    }
}

#[test]
fn phase_log_constant_vanishes_for_unit_g11_at_zero_a() {
    let p = Parameters::new(c(0.0, 0.0), c(1.0, 0.0), 1).unwrap();
    let pt = complete_case2(c(0.0, 0.0), I, c(1.0, 0.0)).unwrap();
    let r = RegimeLabel::base(BranchIndex::PLUS);
    let l = dp3_core::asymptotics::log_connection(&p, &r, &pt).unwrap();
    assert!(l.norm() < 1e-15);
    let e = eval_phi(&p, &r, &pt, c(8.0, 0.0), 6).unwrap();
    assert!(e.mod_2pi);
    assert!(e.principal_value.re > -PI && e.principal_value.re <= PI);
}

#[test]
fn case_one_points_are_refused() {
    let p = Parameters::new(c(0.0, 0.0), c(1.0, 0.0), 1).unwrap();
    let one = c(1.0, 0.0);
    let zero = c(0.0, 0.0);
    let pt = complete_case1(c(0.0, 0.0), one, zero, zero, one).unwrap();
    let r = RegimeLabel::base(BranchIndex::PLUS);
    let err = eval_u(&p, &r, &MonodromyInput::Point(pt), c(10.0, 0.0), 4).unwrap_err();
    assert!(matches!(err, Dp3Error::InvalidCase(_)));
    let wrong = complete_case3(c(0.0, 0.0), I, one).unwrap();
    let err = transformed_point(&p, &r, &wrong).unwrap_err();
    assert!(matches!(err, Dp3Error::InvalidCase(_)));
}

#[test]
fn regime_and_parameter_sign_must_agree() {
    let p = Parameters::new(c(0.1, 0.0), c(1.0, 0.0), 1).unwrap();
    let r = RegimeLabel::new(Axis::Real, 0, 1, 1, 0, BranchIndex::PLUS).unwrap();
    assert!(eval_u(&p, &r, &MonodromyInput::S00(I), c(10.0, 0.0), 4).is_err());
    assert!(RegimeLabel::new(Axis::Imaginary, 0, 0, 0, 0, BranchIndex::PLUS).is_err());
}

#[test]
fn exp_magnitude_follows_the_exponent_law() {
    for p in parameter_sets() {
        for k in KS {
            for r in RegimeLabel::all_for(&p, k).into_iter().filter(|r| r.ell == 0) {
                let tau = on_ray(&r, 27.0);
                let e = eval_u(&p, &r, &MonodromyInput::S00(c(0.0, 0.0)), tau, 6).unwrap();
                let want = (-4.5 * p.eb().abs().cbrt() * 9.0).exp();
                assert!((e.exp_magnitude / want - 1.0).abs() < 1e-12, "{r}");
            }
        }
    }
}

#[test]
fn f_minus_and_f_plus_totals_satisfy_the_corollary_numerically() {
    let p = Parameters::new(c(0.3, 0.2), c(1.0, 0.0), 1).unwrap();
    let r = RegimeLabel::base(BranchIndex::PLUS);
    let mono = MonodromyInput::S00(I * (-PI * p.a).exp());
    let tau = c(200.0, 0.0);
    let fm = eval_f_minus(&p, &r, &mono, tau, 12).unwrap();
    let fp = eval_f_plus(&p, &r, &mono, tau, 12).unwrap();
    let u = eval_u(&p, &r, &mono, tau, 14).unwrap();
    let lhs = I * 4.0 / p.eb() * fp.total;
    let rhs = 2.0 * fm.total + I * tau * (2.0 * p.a / tau + p.b / u.total);
    assert!((lhs - rhs).norm() < 1e-8 * lhs.norm());
    let h = eval_h(&p, &r, &mono, tau, 12).unwrap();
    assert!(h.next_term_proxy < 1e-6 * h.total.norm());
}

#[test]
fn truncation_cap_is_enforced() {
    let p = Parameters::new(c(0.1, 0.0), c(1.0, 0.0), 1).unwrap();
    let r = RegimeLabel::base(BranchIndex::PLUS);
    let cap = dp3_core::asymptotics::max_order();
    assert!(RayExpansion::new(&p, r, cap + 1).is_err());
    let ray = RayExpansion::new(&p, r, 40).unwrap();
    let n = ray.optimal_order(c(50.0, 0.0));
    assert!(n <= 42);
}
