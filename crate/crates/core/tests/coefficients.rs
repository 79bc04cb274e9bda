use dp3_core::coefficients::{
    d_and_htilde_coeffs, eta_coeffs, hatted_family, log_series_contribution, phi_coeffs, r_coeffs,
    u_coeffs, w_coeffs, CoefficientTable, Family,
};
use dp3_core::params::{cis, I};
use dp3_core::verify::oracles::{
    definition_series, eta_oracle, log_oracle, order_matched_u, reciprocal_oracle,
};
use dp3_core::{derived_constants, BranchIndex, Parameters, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

const KS: [BranchIndex; 2] = [BranchIndex::PLUS, BranchIndex::MINUS];

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn unit(a: C64) -> Parameters {
    Parameters::new(a, c(1.0, 0.0), 1).unwrap()
}

/// Largest entrywise relative gap; exact zeros are compared at the table scale.
fn table_gap(oracle: &[C64], table: &[C64]) -> f64 {
    let scale = table.iter().map(|z| z.norm()).fold(f64::MIN_POSITIVE, f64::max);
    oracle
        .iter()
        .zip(table)
        .map(|(x, y)| {
            if y.norm() == 0.0 {
                x.norm() / scale
            } else {
                (x - y).norm() / x.norm().max(y.norm())
            }
        })
        .fold(0.0, f64::max)
}

fn random_table(seed: u64, n: usize) -> Vec<C64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..=n)
        .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

#[test]
fn u4_closed_form() {
    let a = c(0.4, -0.3);
    let t = u_coeffs(&unit(a), BranchIndex::PLUS, 0, 0, 8).unwrap();
    assert!((t.get(4) + a * (a * a + 1.0) / 81.0).norm() < 1e-15);
    assert_eq!(t.family, Family::U);
}

#[test]
fn u_table_matches_order_matching_oracle() {
    let p = unit(c(0.3, 0.1));
    for k in KS {
        let dc = derived_constants(&p, k).unwrap();
        let oracle = order_matched_u(&p, c(1.0, 0.0), dc.c0k, 20);
        assert!(oracle.consistency < 1e-12);
        let t = u_coeffs(&p, k, 0, 0, 20).unwrap();
        assert!(table_gap(&oracle.u, &t.values) < 1e-12);
        assert!((oracle.u[10] - t.get(10)).norm() <= 1e-12 * t.get(10).norm());
    }
}

#[test]
fn w4_closed_form_and_reciprocal_oracle() {
    let u = u_coeffs(&unit(c(0.3, 0.1)), BranchIndex::PLUS, 0, 0, 8).unwrap();
    let w = w_coeffs(&u);
    let v = &u.values;
    let want = -v[4] + 2.0 * v[0] * v[2] + v[1] * v[1] - v[0].powi(3);
    assert!((w.get(4) - want).norm() < 1e-15);
    for seed in 0..4 {
        let t = random_table(seed, 30);
        let mut tab = u.clone();
        tab.values = t.clone();
        let got = w_coeffs(&tab);
        assert!(table_gap(&reciprocal_oracle(&t), &got.values) < 1e-12);
    }
}

#[test]
fn eta_closed_form_and_convolution_oracle() {
    let u = u_coeffs(&unit(c(0.3, 0.1)), BranchIndex::MINUS, 0, 0, 12).unwrap();
    let eta = eta_coeffs(&u);
    let v = &u.values;
    assert!((eta.get(0) - (-6.0 * v[2] + v[0] * v[0])).norm() < 1e-15);
    for seed in 10..14 {
        let t = random_table(seed, 24);
        let mut tab = u.clone();
        tab.values = t.clone();
        assert!(table_gap(&eta_oracle(&t), &eta_coeffs(&tab).values) < 1e-12);
    }
}

#[test]
fn r_closed_forms() {
    let a = c(0.3, 0.1);
    for k in KS {
        let dc = derived_constants(&unit(a), k).unwrap();
        let r = r_coeffs(&unit(a), k, 0, 6).unwrap();
        assert!((r.get(0) - (a - I / 2.0) / (3.0 * dc.alpha_sq)).norm() < 1e-15);
        assert_eq!(r.get(1), c(0.0, 0.0));
        assert_eq!(r.get(3), c(0.0, 0.0));
        let r2 = I * a * (1.0 + I * a) / (18.0 * dc.alpha_sq * dc.alpha_sq);
        assert!((r.get(2) - r2).norm() < 1e-15);
        let r0 = r_coeffs(&unit(c(0.0, 0.0)), k, 0, 4).unwrap();
        assert!((r0.get(0) + I / (6.0 * dc.alpha_sq)).norm() < 1e-15);
        assert_eq!(r0.get(2), c(0.0, 0.0));
    }
}

#[test]
fn r_table_matches_the_f_minus_definition() {
    let p = unit(c(0.3, 0.1));
    for k in KS {
        let dc = derived_constants(&p, k).unwrap();
        let u = u_coeffs(&p, k, 0, 0, 12).unwrap();
        let r = r_coeffs(&p, k, 0, 8).unwrap();
        let ds = definition_series(&p, c(1.0, 0.0), dc.c0k, &u.values);
        let scale = 2.0 / (I * dc.cbrt_eb * dc.omega);
        let mut oracle = Vec::new();
        for m in 0..=8 {
            let mut z = ds.two_f_minus.coeff(m);
            if m == 0 {
                z += I * (p.a - I / 2.0);
            }
            oracle.push(z * scale);
        }
        assert!((ds.two_f_minus.coeff(-2) * scale + 2.0).norm() < 1e-14);
        assert!(table_gap(&oracle, &r.values) < 1e-12, "k = {}", k.value());
    }
}

#[test]
fn d_and_htilde_closed_forms() {
    for k in KS {
        let p = unit(c(0.0, 0.0));
        let u = u_coeffs(&p, k, 0, 0, 8).unwrap();
        let r = r_coeffs(&p, k, 0, 8).unwrap();
        let (d, h) = d_and_htilde_coeffs(&u, &r, &p, k, 0).unwrap();
        assert!(d.values.iter().all(|z| z.norm() < 1e-15));
        let want = -cis(PI * k.f() / 3.0) / 18.0;
        assert!((h.get(0) - want).norm() < 1e-15);
        assert_eq!(h.get(1), c(0.0, 0.0));

        let a = c(0.3, 0.1);
        let p = unit(a);
        let u = u_coeffs(&p, k, 0, 0, 8).unwrap();
        let r = r_coeffs(&p, k, 0, 8).unwrap();
        let (d, h) = d_and_htilde_coeffs(&u, &r, &p, k, 0).unwrap();
        let (uv, rv) = (&u.values, &r.values);
        let mut d0 = c(0.0, 0.0);
        for i in 0..=2 {
            for j in 0..=2 {
                if i + j == 2 {
                    d0 += 8.0 * uv[i] * uv[j] + (4.0 * uv[i] - rv[i]) * rv[j];
                }
            }
        }
        d0 -= rv[0] * rv[0] * uv[0];
        assert!((d.get(0) - d0).norm() < 1e-14);
        let h0 = -(12.0 * a * a + 1.0) * cis(PI * k.f() / 3.0) / 18.0;
        assert!((h.get(0) - h0).norm() < 1e-15);
        assert_eq!(h.get(1), c(0.0, 0.0));
    }
}

#[test]
fn hatted_family_closed_forms() {
    let a = c(0.3, 0.1);
    let p = unit(a);
    for k in KS {
        let u = u_coeffs(&p, k, 0, 0, 10).unwrap();
        let hat = hatted_family(&p, k, 1, 0, 10).unwrap();
        assert!((hat.u.get(0) + u.get(0)).norm() < 1e-15);
        let want = -a * (a * a + 1.0) * cis(2.0 * PI * k.f() / 3.0) / 243.0;
        assert!((hat.u.get(8) - want).norm() < 1e-15);
        assert_eq!(hat.u.family, Family::UHat);
    }
}

#[test]
fn phase_coefficient_closed_forms() {
    for k in KS {
        let z = phi_coeffs(&unit(c(0.0, 0.0)), k, 0, 8).unwrap();
        assert!(z.nu.values[..=4].iter().all(|v| v.norm() < 1e-15));
        assert_eq!(z.mu.get(0), c(0.0, 0.0));
        assert_eq!(z.p.get(0), c(0.0, 0.0));

        let a = c(0.3, 0.1);
        let t = phi_coeffs(&unit(a), k, 0, 8).unwrap();
        let e1 = cis(PI * k.f() / 3.0);
        let nu2 = a * (1.0 + I * a) * e1 / 6.0;
        assert!((t.nu.get(2) - nu2).norm() < 1e-15);
        let nu4 = -(I * a * cis(2.0 * PI * k.f() / 3.0) / 36.0) * ((1.0 - 2.0 * a * a) / 3.0 + I * a);
        assert!((t.nu.get(4) - nu4).norm() < 1e-14, "{} vs {nu4}", t.nu.get(4));
    }
}

#[test]
fn log_contributions_match_closed_forms_and_series_logarithm() {
    let a = c(0.3, 0.1);
    let p = unit(a);
    for k in KS {
        let u = u_coeffs(&p, k, 0, 0, 14).unwrap();
        let v = &u.values;
        assert!((log_series_contribution(&u, 2).unwrap() - v[0]).norm() < 1e-15);
        let l4 = a * a * cis(-PI * k.f() / 3.0) / 18.0;
        assert!((log_series_contribution(&u, 4).unwrap() - l4).norm() < 1e-15);
        assert!((v[2] - v[0] * v[0] / 2.0 - l4).norm() < 1e-15);
        assert!((log_series_contribution(&u, 6).unwrap() + a / 81.0).norm() < 1e-15);
        let oracle = log_oracle(&v[..=12]);
        for (m, want) in oracle.iter().enumerate().skip(2) {
            let got = log_series_contribution(&u, m).unwrap();
            assert!((got - want).norm() < 1e-13, "m = {m}");
        }
        assert!(log_series_contribution(&u, 1).is_err());
        assert!(log_series_contribution(&u, 40).is_err());
    }
}

#[test]
fn integer_ia_sets_the_warning_flag() {
    let t: CoefficientTable = u_coeffs(&unit(c(0.0, -1.0)), BranchIndex::PLUS, 0, 0, 6).unwrap();
    assert!(t.warn);
    let t = u_coeffs(&unit(c(0.3, 0.0)), BranchIndex::PLUS, 0, 0, 6).unwrap();
    assert!(!t.warn);
}

#[test]
fn inconsistent_labels_are_rejected() {
    let p = unit(c(0.3, 0.0));
    assert!(u_coeffs(&p, BranchIndex::PLUS, 2, 0, 4).is_err());
    assert!(r_coeffs(&p, BranchIndex::PLUS, 1, 4).is_err());
    assert!(hatted_family(&p, BranchIndex::PLUS, 0, 0, 4).is_err());
}

fn admissible(a_re: f64, a_im: f64, b: f64, epsilon: i8) -> (Parameters, i8) {
    let eps2 = if b * epsilon as f64 > 0.0 { 0 } else { 1 };
    (Parameters::with_labels(c(a_re, a_im), c(b, 0.0), epsilon, eps2, eps2).unwrap(), eps2)
}

proptest::proptest! {
    #[test]
    fn product_with_reciprocal_table_is_one(
        parts in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 2..30),
    ) {
        let values: Vec<C64> = parts.iter().map(|&(x, y)| c(x, y)).collect();
        let mut tab = u_coeffs(&unit(c(0.3, 0.1)), BranchIndex::PLUS, 0, 0, 1).unwrap();
        tab.values = values.clone();
        let w = w_coeffs(&tab).values;
        let scale = values.iter().chain(&w).map(|z| z.norm()).fold(1.0, f64::max);
        for m in 0..values.len() {
            let mut acc = values[m] + w[m];
            for p in 0..m.saturating_sub(1) {
                acc += values[p] * w[m - 2 - p];
            }
            proptest::prop_assert!(acc.norm() <= 1e-12 * scale * scale, "m = {m}: {acc}");
        }
    }

    #[test]
    fn odd_u_coefficients_vanish(
        a_re in -2.0f64..2.0, a_im in -2.0f64..2.0, b in 0.1f64..10.0,
        flip in proptest::bool::ANY, epsilon in proptest::sample::select(vec![1i8, -1]),
    ) {
        let (p, eps2) = admissible(a_re, a_im, if flip { -b } else { b }, epsilon);
        for k in KS {
            let u = u_coeffs(&p, k, 0, eps2, 24).unwrap();
            for m in (1..=24).step_by(2) {
                proptest::prop_assert_eq!(u.get(m), c(0.0, 0.0));
            }
            let hat = hatted_family(&p, k, 1, eps2, 24).unwrap();
            for m in (1..=24).step_by(2) {
                proptest::prop_assert_eq!(hat.u.get(m), c(0.0, 0.0));
            }
        }
    }

    #[test]
    fn log_contributions_equal_the_series_logarithm(
        a_re in -1.0f64..1.0, a_im in -1.0f64..1.0, b in 0.2f64..5.0,
    ) {
        let (p, eps2) = admissible(a_re, a_im, b, 1);
        for k in KS {
            let u = u_coeffs(&p, k, 0, eps2, 16).unwrap();
            let oracle = log_oracle(&u.values[..=14]);
            let got: Vec<C64> = (2..=16).map(|m| log_series_contribution(&u, m).unwrap()).collect();
            proptest::prop_assert!(table_gap(&oracle[2..=16], &got) < 1e-12);
        }
    }
}
