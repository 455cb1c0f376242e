mod common;

use std::f64::consts::PI;

use common::*;
use procore::gates::{abc_decompose, program_v, program_w, reflection, TargetSpec};
use procore::{CouplingProfile, Layout, ProcessorCore, StateVector};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rebuild(f: &procore::gates::AbcFactors) -> CMat {
    let (a, b, c) = (from_mat2(&f.a), from_mat2(&f.b), from_mat2(&f.c));
    let z = z();
    (&a * &z * &b * &z * &c) * num_complex::Complex64::from_polar(1.0, f.alpha)
}

#[test]
fn abc_identities_for_haar_targets() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..1000 {
        let w = random_unitary2(&mut rng);
        let f = abc_decompose(&w).unwrap();
        let (a, b, c) = (from_mat2(&f.a), from_mat2(&f.b), from_mat2(&f.c));
        let abc = &a * &b * &c;
        assert!((abc - eye(2)).iter().all(|z| z.norm() <= 1e-10));
        assert!((rebuild(&f) - from_mat2(&w)).iter().all(|z| z.norm() <= 1e-10));
    }
}

#[test]
fn w_leaves_ancilla_clean_and_sites_in_place() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 2..=5 {
        let core = ProcessorCore::christandl(n).unwrap();
        let layout = Layout::new(n, 1, 0).unwrap();
        for x in 1..=n {
            let targets = (1..=n).map(|j| (j != x).then(|| random_unitary2(&mut rng))).collect();
            let program = program_w(&core, &TargetSpec::new(x, targets), layout).unwrap();
            assert_eq!(program.final_locations(), (0..=n).collect::<Vec<_>>());
            for s in 0..1usize << n {
                let out = core.execute(&program, &StateVector::basis(layout, s << 1).unwrap()).unwrap();
                let leaked: f64 = out.amplitudes.iter().skip(1).step_by(2).map(|a| a.norm_sqr()).sum();
                assert!(leaked <= 1e-10, "N={n} x={x} s={s:b}: {leaked:.3e}");
            }
        }
    }
}

#[test]
fn w_on_phi_pi_chain_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for n in 2..=5 {
        let p = CouplingProfile::christandl(n).unwrap().with_field_shift(1.0);
        let core = ProcessorCore::new(p, PI).unwrap();
        assert!((core.phi_n() - PI).abs() < 1e-12);
        let x = rng.random_range(1..=n);
        let targets: Vec<_> = (1..=n).map(|j| (j != x).then(|| random_unitary2(&mut rng))).collect();
        let program = program_w(&core, &TargetSpec::new(x, targets.clone()), Layout::new(n, 1, 0).unwrap()).unwrap();
        let u = core.logical_unitary(&program, &(0..n).collect::<Vec<_>>()).unwrap();
        assert!(phase_distance(&controlled_product(x, &targets), &u) <= 1e-8);
    }
}

#[test]
fn v_applies_reflections_when_control_is_set() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 2..=5 {
        let core = ProcessorCore::christandl(n).unwrap();
        let layout = Layout::new(n, 1, 0).unwrap();
        for x in 1..=n {
            let angles: Vec<(f64, f64)> =
                (0..n).map(|_| (rng.random_range(-PI..PI), rng.random_range(-PI..PI))).collect();
            let program = program_v(&core, x, &angles, layout).unwrap();
            let targets: Vec<_> = angles.iter().map(|&(t, p)| Some(reflection(t, p))).collect();
            let u = core.logical_unitary(&program, &(0..n).collect::<Vec<_>>()).unwrap();
            assert!(phase_distance(&controlled_product(x, &targets), &u) <= 1e-8, "N={n} x={x}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(25))]

    #[test]
    fn random_w_matches_controlled_product(n in 2usize..=4, seed in 0u64..10_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let core = ProcessorCore::christandl(n).unwrap();
        let x = rng.random_range(1..=n);
        let targets: Vec<_> = (1..=n).map(|j| (j != x && rng.random_bool(0.7)).then(|| random_unitary2(&mut rng))).collect();
        let program = program_w(&core, &TargetSpec::new(x, targets.clone()), Layout::new(n, 1, 0).unwrap()).unwrap();
        let census = program.census();
        prop_assert_eq!((census.free_evolutions, census.swaps), (4, 2));
        let u = core.logical_unitary(&program, &(0..n).collect::<Vec<_>>()).unwrap();
        prop_assert!(phase_distance(&controlled_product(x, &targets), &u) <= 1e-8);
    }
}
