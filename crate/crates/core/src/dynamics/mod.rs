//! Many-qubit states over core + ancilla + store and their evolution under
//! the always-on chain Hamiltonian.

mod propagator;
mod state;

pub use propagator::{
    evolve, full_propagator, mirror_map, mirror_phase, sector_hamiltonian, BlockPropagator, Propagator,
    SectorDecomposition, MAX_PROPAGATOR_SITES,
};
pub use state::{
    apply_local, fidelity_up_to_global_phase, swap_qubits, BasisState, Layout, StateVector, MAX_QUBITS, NORM_TOL,
};

pub(crate) use state::apply_local_unchecked;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::CouplingProfile;
    use crate::error::CoreError;
    use crate::linalg::{max_abs_diff, phase_aligned_distance, unitarity_defect};
    use nalgebra::DMatrix;
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn random_state(layout: Layout, rng: &mut ChaCha8Rng) -> StateVector {
        let amps: Vec<Complex64> = (0..layout.dim())
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        StateVector::from_amplitudes(layout, amps.iter().map(|a| a / norm).collect()).unwrap()
    }

    fn basis(bits: &str) -> StateVector {
        let b = BasisState::parse(bits).unwrap();
        StateVector::from_basis(Layout::core_only(b.bits.len()).unwrap(), &b).unwrap()
    }

    #[test]
    fn zero_time_is_identity() {
        let p = CouplingProfile::christandl(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s = random_state(Layout::new(4, 1, 1).unwrap(), &mut rng);
        let out = evolve(&p, &s, 0.0).unwrap();
        let diff = s.amplitudes.iter().zip(&out.amplitudes).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        assert!(diff < 1e-14, "{diff}");
    }

    #[test]
    fn christandl_three_transfers_and_signs() {
        let p = CouplingProfile::christandl(3).unwrap();
        let out = evolve(&p, &basis("100"), PI).unwrap();
        assert!(fidelity_up_to_global_phase(&out, &basis("001")).unwrap() >= 1.0 - 1e-10);

        let out = evolve(&p, &basis("110"), PI).unwrap();
        assert!((out.amplitude("011").unwrap() + 1.0).norm() < 1e-10);
    }

    #[test]
    fn two_site_transfer() {
        let p = CouplingProfile::new(vec![0.5], vec![0.5, 0.5]).unwrap();
        let u = full_propagator(&p, PI).unwrap().matrix;
        // |10> is index 2, |01> is index 1
        assert!((u[(1, 2)].norm() - 1.0).abs() < 1e-12);
        assert!(u[(2, 2)].norm() < 1e-12);
        let id = full_propagator(&p, 0.0).unwrap().matrix;
        assert!(max_abs_diff(&id, &DMatrix::identity(4, 4)) < 1e-14);
    }

    #[test]
    fn propagator_is_unitary() {
        let p = CouplingProfile::new(vec![0.3, 1.7, 0.3], vec![0.2, -1.0, -1.0, 0.2]).unwrap();
        for t in [0.1, 1.0, 7.3] {
            assert!(unitarity_defect(&full_propagator(&p, t).unwrap().matrix) <= 1e-10);
        }
    }

    #[test]
    fn size_limit_and_mismatch() {
        let p = CouplingProfile::christandl(13).unwrap();
        assert!(matches!(full_propagator(&p, 1.0), Err(CoreError::SizeLimit { .. })));
        let p3 = CouplingProfile::christandl(3).unwrap();
        assert!(matches!(evolve(&p3, &basis("10"), 1.0), Err(CoreError::InvalidArgument(_))));
    }

    #[test]
    fn mirror_map_examples() {
        assert_eq!(mirror_map(&basis("000"), 1.234), basis("000"));
        let out = mirror_map(&basis("110"), 0.0);
        assert!((out.amplitude("011").unwrap() + 1.0).norm() < 1e-15);
        let out = mirror_map(&basis("100"), PI);
        assert!((out.amplitude("001").unwrap() + 1.0).norm() < 1e-15);
    }

    #[test]
    fn mirror_map_matches_dense_propagator() {
        for n in 2..=8 {
            let p = CouplingProfile::christandl(n).unwrap();
            let u = full_propagator(&p, PI).unwrap().matrix;
            let dim = 1 << n;
            let mut m = DMatrix::zeros(dim, dim);
            let layout = Layout::core_only(n).unwrap();
            for col in 0..dim {
                let out = mirror_map(&StateVector::basis(layout, col).unwrap(), 0.0);
                for row in 0..dim {
                    m[(row, col)] = out.amplitudes[row];
                }
            }
            assert!(phase_aligned_distance(&m, &u) <= 1e-8, "n={n}");
        }
    }

    #[test]
    fn mirror_map_twice_gives_weight_phase() {
        let phi = 0.77;
        let layout = Layout::core_only(5).unwrap();
        for idx in 0..32usize {
            let s = StateVector::basis(layout, idx).unwrap();
            let twice = mirror_map(&mirror_map(&s, phi), phi);
            let n = idx.count_ones() as i32;
            let m = n % 2;
            let want = Complex64::from_polar(if (n - m) % 2 == 0 { 1.0 } else { -1.0 }, -2.0 * n as f64 * phi);
            assert!((twice.amplitudes[idx] - want).norm() < 1e-14);
        }
    }

    #[test]
    fn excitation_number_is_conserved() {
        let p = CouplingProfile::new(vec![0.9, 0.4, 0.4, 0.9], vec![0.1, 0.5, -0.3, 0.5, 0.1]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let s = random_state(Layout::new(5, 1, 0).unwrap(), &mut rng);
            let t = rng.random_range(0.0..10.0);
            let before = s.weight_distribution();
            let after = evolve(&p, &s, t).unwrap().weight_distribution();
            for (a, b) in before.iter().zip(&after) {
                assert!((a - b).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn evolution_composes() {
        let p = CouplingProfile::christandl(5).unwrap();
        let dec = SectorDecomposition::new(&p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let s = random_state(Layout::core_only(5).unwrap(), &mut rng);
            let (t1, t2) = (rng.random_range(0.0..2.0 * PI), rng.random_range(0.0..2.0 * PI));
            let a = dec.propagator(t1).unwrap().apply(&dec.propagator(t2).unwrap().apply(&s).unwrap()).unwrap();
            let b = dec.propagator(t1 + t2).unwrap().apply(&s).unwrap();
            let diff = a.amplitudes.iter().zip(&b.amplitudes).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
            assert!(diff < 1e-9);
            assert!((a.norm() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn sequential_and_parallel_decompositions_agree() {
        use crate::parallel::Parallelism;
        let p = CouplingProfile::christandl(8).unwrap();
        let a = SectorDecomposition::with_parallelism(&p, Parallelism::Sequential).unwrap().propagator_with(1.3, Parallelism::Sequential).unwrap().to_dense();
        let b = SectorDecomposition::with_parallelism(&p, Parallelism::Parallel).unwrap().propagator_with(1.3, Parallelism::Parallel).unwrap().to_dense();
        assert!(max_abs_diff(&a, &b) <= 1e-12);
    }
}
