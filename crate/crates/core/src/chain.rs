//! Mirror-symmetric XY spin chains: coupling profiles, their single-excitation
//! Jacobi matrices, mirror-inversion certificates and inverse spectral design.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, CoreError, Result};

/// Entrywise tolerance for mirror symmetry and persymmetry checks.
pub const SYMMETRY_TOL: f64 = 1e-12;
/// A certificate is valid when its worst-case deviation is at most this.
pub const CERTIFICATE_TOL: f64 = 1e-9;
/// Relative eigenvalue residual allowed for inverse design.
pub const RECONSTRUCTION_TOL: f64 = 1e-8;

/// Engineered couplings of the chain Hamiltonian
/// `H = -1/2 sum w_j (XX + YY)_{j,j+1} + 1/2 sum l_j (Z_j + 1)`.
///
/// Couplings are stored as positive magnitudes `w_j`. Sites are numbered
/// `1..=n_sites` in documentation and `0..n_sites` in code.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CouplingProfile {
    pub n_sites: usize,
    pub omegas: Vec<f64>,
    pub lambdas: Vec<f64>,
}

impl CouplingProfile {
    /// Builds a profile, checking only that the lengths are consistent.
    /// Use [`CouplingProfile::validate`] for symmetry and sign diagnostics.
    pub fn new(omegas: Vec<f64>, lambdas: Vec<f64>) -> Result<Self> {
        let profile = CouplingProfile {
            n_sites: lambdas.len(),
            omegas,
            lambdas,
        };
        profile.ensure_shape()?;
        Ok(profile)
    }

    /// Coupling family with single-excitation spectrum `{0, 1, ..., N-1}`:
    /// `w_j = sqrt(j (N - j)) / 2`, uniform field `(N - 1) / 2`.
    pub fn christandl(n_sites: usize) -> Result<Self> {
        if n_sites < 2 {
            return invalid(format!("christandl profile needs at least 2 sites, got {n_sites}"));
        }
        let n = n_sites as f64;
        let omegas = (1..n_sites)
            .map(|j| ((j as f64) * (n - j as f64)).sqrt() / 2.0)
            .collect();
        let lambdas = vec![(n - 1.0) / 2.0; n_sites];
        Ok(CouplingProfile {
            n_sites,
            omegas,
            lambdas,
        })
    }

    /// Uniform chain `w_j = omega`, `l_j = lambda`.
    pub fn uniform(n_sites: usize, omega: f64, lambda: f64) -> Result<Self> {
        if n_sites == 0 {
            return invalid("chain must have at least one site");
        }
        Self::new(vec![omega; n_sites - 1], vec![lambda; n_sites])
    }

    pub fn ensure_shape(&self) -> Result<()> {
        if self.n_sites == 0 {
            return invalid("chain must have at least one site");
        }
        if self.lambdas.len() != self.n_sites || self.omegas.len() + 1 != self.n_sites {
            return invalid(format!(
                "profile lengths inconsistent: n_sites={}, {} omegas, {} lambdas",
                self.n_sites,
                self.omegas.len(),
                self.lambdas.len()
            ));
        }
        if self.omegas.iter().chain(&self.lambdas).any(|x| !x.is_finite()) {
            return invalid("profile contains non-finite couplings");
        }
        Ok(())
    }

    pub fn max_omega(&self) -> f64 {
        self.omegas.iter().cloned().fold(0.0, f64::max)
    }

    /// Adds `shift` to every on-site field; moves the whole spectrum rigidly.
    pub fn with_field_shift(&self, shift: f64) -> Self {
        CouplingProfile {
            lambdas: self.lambdas.iter().map(|l| l + shift).collect(),
            ..self.clone()
        }
    }

    /// Multiplies every nearest-neighbour coupling by `factor`.
    pub fn with_scaled_couplings(&self, factor: f64) -> Self {
        CouplingProfile {
            omegas: self.omegas.iter().map(|w| w * factor).collect(),
            ..self.clone()
        }
    }

    pub fn validate(&self) -> ProfileDiagnostics {
        validate_profile(self)
    }

    pub fn single_excitation_matrix(&self) -> JacobiMatrix {
        single_excitation_matrix(self)
    }
}

/// Result of [`validate_profile`]. Never an error: invalid inputs are reported here.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileDiagnostics {
    pub length_mismatch: Option<String>,
    /// max_j |w_j - w_{N-j}|
    pub omega_mirror_residual: f64,
    /// max_j |l_j - l_{N-j+1}|
    pub lambda_mirror_residual: f64,
    /// 1-based bond indices with w_j <= 0.
    pub sign_violations: Vec<usize>,
    pub non_finite: bool,
}

impl ProfileDiagnostics {
    pub fn mirror_symmetric(&self) -> bool {
        self.omega_mirror_residual <= SYMMETRY_TOL && self.lambda_mirror_residual <= SYMMETRY_TOL
    }

    pub fn is_valid(&self) -> bool {
        self.length_mismatch.is_none() && !self.non_finite && self.mirror_symmetric() && self.sign_violations.is_empty()
    }
}

/// Mirror-symmetry residuals, sign violations and length mismatches.
pub fn validate_profile(profile: &CouplingProfile) -> ProfileDiagnostics {
    let length_mismatch = profile.ensure_shape().err().map(|e| e.to_string());
    let mirror = |xs: &[f64]| {
        let n = xs.len();
        (0..n).map(|j| (xs[j] - xs[n - 1 - j]).abs()).fold(0.0, f64::max)
    };
    ProfileDiagnostics {
        length_mismatch,
        omega_mirror_residual: mirror(&profile.omegas),
        lambda_mirror_residual: mirror(&profile.lambdas),
        sign_violations: profile
            .omegas
            .iter()
            .enumerate()
            .filter(|(_, w)| !(**w > 0.0))
            .map(|(j, _)| j + 1)
            .collect(),
        non_finite: profile.omegas.iter().chain(&profile.lambdas).any(|x| !x.is_finite()),
    }
}

/// Real symmetric tridiagonal matrix with diagonal `l_j` and off-diagonal `w_j`.
///
/// Conjugating by `D = diag((-1)^j)` gives the Hamiltonian restricted to the
/// single-excitation states `|0..1_j..0>` ordered by site; both share a spectrum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JacobiMatrix {
    pub diagonal: Vec<f64>,
    pub off_diagonal: Vec<f64>,
}

impl JacobiMatrix {
    pub fn dim(&self) -> usize {
        self.diagonal.len()
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for (i, d) in self.diagonal.iter().enumerate() {
            m[(i, i)] = *d;
        }
        for (i, b) in self.off_diagonal.iter().enumerate() {
            m[(i, i + 1)] = *b;
            m[(i + 1, i)] = *b;
        }
        m
    }

    /// Ascending eigenvalues.
    pub fn spectrum(&self) -> Spectrum {
        let mut energies: Vec<f64> = SymmetricEigen::new(self.to_dense()).eigenvalues.iter().cloned().collect();
        energies.sort_by(f64::total_cmp);
        Spectrum { energies }
    }

    /// Commutes with the exchange permutation, entrywise to `tol`.
    pub fn is_persymmetric(&self, tol: f64) -> bool {
        let m = self.to_dense();
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| (m[(i, j)] - m[(n - 1 - j, n - 1 - i)]).abs() <= tol))
    }
}

pub fn single_excitation_matrix(profile: &CouplingProfile) -> JacobiMatrix {
    JacobiMatrix {
        diagonal: profile.lambdas.clone(),
        off_diagonal: profile.omegas.clone(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub energies: Vec<f64>,
}

impl Spectrum {
    pub fn new(energies: Vec<f64>) -> Self {
        Spectrum { energies }
    }

    /// Equally spaced levels `offset + k * spacing`, `k = 0..n`.
    pub fn linear(n: usize, offset: f64, spacing: f64) -> Self {
        Spectrum {
            energies: (0..n).map(|k| offset + spacing * k as f64).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.energies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.energies.is_empty()
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.energies.windows(2).all(|w| w[1] > w[0])
    }
}

/// Witness that `exp(-i E_k tau) = (-1)^k exp(-i phi_N)` for every level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MirrorCertificate {
    pub tau: f64,
    pub phi_n: f64,
    pub max_deviation: f64,
}

impl MirrorCertificate {
    pub fn is_valid(&self) -> bool {
        self.max_deviation <= CERTIFICATE_TOL
    }
}

/// Wraps an angle into `(-pi, pi]`, snapping values within 1e-12 of 0 or pi.
pub fn wrap_phase(angle: f64) -> f64 {
    let mut a = angle.rem_euclid(2.0 * PI);
    if a > PI {
        a -= 2.0 * PI;
    }
    if a.abs() < 1e-12 {
        0.0
    } else if (a.abs() - PI).abs() < 1e-12 {
        PI
    } else {
        a
    }
}

pub fn mirror_certificate(profile: &CouplingProfile, tau: f64) -> Result<MirrorCertificate> {
    profile.ensure_shape()?;
    if !(tau > 0.0 && tau.is_finite()) {
        return invalid(format!("tau must be positive and finite, got {tau}"));
    }
    let spectrum = single_excitation_matrix(profile).spectrum();
    Ok(certify_spectrum(&spectrum, tau))
}

pub(crate) fn certify_spectrum(spectrum: &Spectrum, tau: f64) -> MirrorCertificate {
    let phi_n = wrap_phase(spectrum.energies[0] * tau);
    let reference = Complex64::from_polar(1.0, -phi_n);
    let max_deviation = spectrum
        .energies
        .iter()
        .enumerate()
        .map(|(k, e)| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            (Complex64::from_polar(1.0, -e * tau) - reference * sign).norm()
        })
        .fold(0.0, f64::max);
    MirrorCertificate {
        tau,
        phi_n,
        max_deviation,
    }
}

/// Unique mirror-symmetric profile with positive couplings whose
/// single-excitation matrix has the given (strictly increasing) spectrum.
///
/// The first eigenvector components of a persymmetric Jacobi matrix are fixed
/// by the spectrum alone, `w_k ~ 1 / prod_{j != k} |E_k - E_j|`; Lanczos on
/// `diag(E)` started from `sqrt(w)` then rebuilds the tridiagonal entries.
pub fn reconstruct_profile(spectrum: &Spectrum) -> Result<CouplingProfile> {
    let energies = &spectrum.energies;
    let n = energies.len();
    if n < 2 {
        return invalid(format!("inverse design needs at least 2 levels, got {n}"));
    }
    if energies.iter().any(|e| !e.is_finite()) {
        return invalid("spectrum contains non-finite energies");
    }
    if !spectrum.is_strictly_increasing() {
        return Err(CoreError::ReconstructionInfeasible(
            "spectrum must be strictly increasing; Jacobi matrices with positive couplings have simple spectra".into(),
        ));
    }
    let scale = energies[n - 1] - energies[0];

    // log-domain weights keep wide spectra from under/overflowing
    let log_w: Vec<f64> = (0..n)
        .map(|k| {
            -(0..n)
                .filter(|&j| j != k)
                .map(|j| ((energies[k] - energies[j]) / scale).abs().ln())
                .sum::<f64>()
        })
        .collect();
    let max_log = log_w.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut start = DVector::from_iterator(n, log_w.iter().map(|l| ((l - max_log) / 2.0).exp()));
    start /= start.norm();

    let d = DVector::from_column_slice(energies);
    let mut basis: Vec<DVector<f64>> = Vec::with_capacity(n);
    let mut alphas = Vec::with_capacity(n);
    let mut betas = Vec::with_capacity(n - 1);
    basis.push(start);
    for j in 0..n {
        let q = &basis[j];
        let mut r = d.component_mul(q);
        let alpha = q.dot(&r);
        alphas.push(alpha);
        if j + 1 == n {
            break;
        }
        r -= q * alpha;
        if j > 0 {
            r -= &basis[j - 1] * betas[j - 1];
        }
        // two passes of full reorthogonalisation
        for _ in 0..2 {
            for b in &basis {
                let proj = b.dot(&r);
                r -= b * proj;
            }
        }
        let beta = r.norm();
        if !(beta > 1e-12 * scale) {
            return Err(CoreError::IllConditioned { index: j + 1, value: beta });
        }
        betas.push(beta);
        basis.push(r / beta);
    }

    let symmetrize = |xs: &[f64]| -> Vec<f64> {
        let m = xs.len();
        (0..m).map(|i| 0.5 * (xs[i] + xs[m - 1 - i])).collect()
    };
    let profile = CouplingProfile {
        n_sites: n,
        omegas: symmetrize(&betas),
        lambdas: symmetrize(&alphas),
    };

    let (index, residual) = reconstruction_residual(spectrum, &profile);
    if residual > RECONSTRUCTION_TOL {
        return Err(CoreError::IllConditioned { index, value: residual });
    }
    Ok(profile)
}

/// Worst relative eigenvalue mismatch between `spectrum` and the profile's
/// single-excitation spectrum, with the 0-based level where it occurs.
pub fn reconstruction_residual(spectrum: &Spectrum, profile: &CouplingProfile) -> (usize, f64) {
    let got = single_excitation_matrix(profile).spectrum();
    let scale = spectrum.energies.iter().map(|e| e.abs()).fold(0.0, f64::max).max(1.0);
    got.energies
        .iter()
        .zip(&spectrum.energies)
        .map(|(a, b)| (a - b).abs() / scale)
        .enumerate()
        .fold((0, 0.0), |best, (k, r)| if r > best.1 { (k, r) } else { best })
}
