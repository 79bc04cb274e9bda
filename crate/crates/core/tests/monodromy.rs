use dp3_core::monodromy::{
    apply_symmetry, check_manifold, classify, composition_table, enumerate_labels, sample_point,
    verify_composition, Case,
};

const CASES: [Case; 3] = [Case::CaseI, Case::CaseIiKplus, Case::CaseIiiKminus];

#[test]
fn sampled_points_lie_on_the_manifold() {
    for case in CASES {
        for seed in 0..50 {
            let p = sample_point(case, seed);
            let r = check_manifold(&p, 1e-12);
            assert!(r.pass, "{case:?} seed {seed}: {r:?}");
            assert_eq!(classify(&p).unwrap().case, case);
        }
    }
}

#[test]
fn every_symmetry_preserves_the_manifold() {
    for label in enumerate_labels() {
        for case in CASES {
            for seed in 0..20 {
                let p = sample_point(case, seed);
                let q = apply_symmetry(label, &p).unwrap();
                let r = check_manifold(&q, 1e-10);
                assert!(r.pass, "{label} {case:?} seed {seed}: {:?}", r.scaled);
            }
        }
    }
}

#[test]
fn composition_relations_hold() {
    for (lhs, chain) in composition_table() {
        for case in CASES {
            for seed in 0..10 {
                let p = sample_point(case, seed);
                let r = verify_composition(lhs, &chain, &p, 1e-10).unwrap();
                assert!(r.pass, "{lhs} = {chain:?} {case:?} seed {seed}: {r:?}");
            }
        }
    }
}
