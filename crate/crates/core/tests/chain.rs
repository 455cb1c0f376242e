mod common;

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use procore::chain::{mirror_certificate, reconstruct_profile, validate_profile, Spectrum};
use procore::{CoreError, CouplingProfile};
use proptest::prelude::*;

fn eigenvalues(p: &CouplingProfile) -> Vec<f64> {
    let n = p.n_sites;
    let m = DMatrix::from_fn(n, n, |i, j| match i.abs_diff(j) {
        0 => p.lambdas[i],
        1 => p.omegas[i.min(j)],
        _ => 0.0,
    });
    let mut ev: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

fn symmetric_profile() -> impl Strategy<Value = CouplingProfile> {
    (2usize..=10).prop_flat_map(|n| {
        (
            prop::collection::vec(0.1f64..2.0, n - 1),
            prop::collection::vec(-2.0f64..2.0, n),
        )
            .prop_map(move |(w, l)| {
                let omegas = (0..n - 1).map(|j| 0.5 * (w[j] + w[n - 2 - j])).collect();
                let lambdas = (0..n).map(|j| 0.5 * (l[j] + l[n - 1 - j])).collect();
                CouplingProfile::new(omegas, lambdas).unwrap()
            })
    })
}

fn spectrum() -> impl Strategy<Value = Vec<f64>> {
    (2usize..=12, -5.0f64..5.0).prop_flat_map(|(n, start)| {
        prop::collection::vec(0.1f64..2.0, n - 1).prop_map(move |gaps| {
            let mut e = vec![start];
            for g in gaps {
                e.push(e.last().unwrap() + g);
            }
            e
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn jacobi_matrix_is_persymmetric(p in symmetric_profile()) {
        let j = p.single_excitation_matrix().to_dense();
        let n = p.n_sites;
        for r in 0..n {
            for c in 0..n {
                prop_assert!((j[(r, c)] - j[(n - 1 - r, n - 1 - c)]).abs() <= 1e-12);
            }
        }
        prop_assert!(validate_profile(&p).is_valid());
    }

    #[test]
    fn reconstruction_round_trip(energies in spectrum()) {
        let p = reconstruct_profile(&Spectrum::new(energies.clone())).unwrap();
        let got = eigenvalues(&p);
        let scale = energies.iter().map(|e| e.abs()).fold(1.0, f64::max);
        for (a, b) in got.iter().zip(&energies) {
            prop_assert!((a - b).abs() <= 1e-8 * scale, "{a} vs {b}");
        }
        prop_assert!(validate_profile(&p).mirror_symmetric());
        prop_assert!(p.omegas.iter().all(|w| *w > 0.0));
    }

    #[test]
    fn certificate_phase_tracks_field_shift(n in 2usize..=8, shift in -3i32..=3) {
        let p = CouplingProfile::christandl(n).unwrap().with_field_shift(shift as f64);
        let cert = mirror_certificate(&p, PI).unwrap();
        prop_assert!(cert.is_valid());
        let expected = if shift.rem_euclid(2) == 0 { 0.0 } else { PI };
        prop_assert!((cert.phi_n - expected).abs() <= 1e-12, "{}", cert.phi_n);
    }
}

#[test]
fn christandl_spectrum_is_linear() {
    for n in 2..=20 {
        let ev = eigenvalues(&CouplingProfile::christandl(n).unwrap());
        for (k, e) in ev.iter().enumerate() {
            assert!((e - k as f64).abs() <= 1e-10, "N={n} k={k}: {e}");
        }
    }
}

#[test]
fn christandl_certificates() {
    for n in 2..=12 {
        let cert = mirror_certificate(&CouplingProfile::christandl(n).unwrap(), PI).unwrap();
        assert!(cert.is_valid() && cert.phi_n == 0.0, "N={n}: {cert:?}");
    }
}

#[test]
fn uniform_chains_do_not_mirror_beyond_three_sites() {
    for n in 4..=8 {
        let p = CouplingProfile::uniform(n, 1.0, 0.0).unwrap();
        let valid = (1..200).any(|k| mirror_certificate(&p, 0.05 * k as f64).unwrap().is_valid());
        assert!(!valid, "N={n}");
    }
}

#[test]
fn reconstruction_rejects_degenerate_spectra() {
    assert!(reconstruct_profile(&Spectrum::new(vec![0.0, 1.0, 1.0])).is_err());
    assert!(reconstruct_profile(&Spectrum::new(vec![2.0, 1.0])).is_err());
    assert!(matches!(CouplingProfile::christandl(1), Err(CoreError::InvalidArgument(_))));
}
