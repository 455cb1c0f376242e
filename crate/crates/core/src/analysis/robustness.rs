use serde::{Deserialize, Serialize};

use crate::chain::{mirror_certificate, wrap_phase, CouplingProfile, CERTIFICATE_TOL};
use crate::dynamics::{mirror_map, SectorDecomposition, StateVector};
use crate::error::{invalid, CoreError, Result};
use crate::linalg::loglog_slope;
use crate::parallel::Parallelism;

/// Samples with infidelity below this are treated as numerically zero.
pub const EPSILON_FLOOR: f64 = 1e-14;
/// Largest timing offset accepted by [`robustness_fit`].
pub const MAX_DELTA_T: f64 = 1e-1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RobustnessReport {
    pub delta_ts: Vec<f64>,
    pub errors: Vec<f64>,
    pub fitted_order: f64,
    /// Samples above [`EPSILON_FLOOR`] that entered the fit.
    pub samples_used: usize,
}

/// Reusable evaluator of `eps(dt) = 1 - |<psi| U(tau + dt) |psi_bar>|^2`, where
/// `|psi>` is the exact mirror image of `|psi_bar>`.
pub struct TimingProbe {
    decomposition: SectorDecomposition,
    state: StateVector,
    target: StateVector,
    tau: f64,
}

impl TimingProbe {
    pub fn new(profile: &CouplingProfile, state: &StateVector, tau: f64, phi_n: f64) -> Result<Self> {
        if state.layout.core_sites != profile.n_sites {
            return invalid(format!(
                "state spans {} core sites, profile has {}",
                state.layout.core_sites, profile.n_sites
            ));
        }
        let cert = mirror_certificate(profile, tau)?;
        if !cert.is_valid() {
            return Err(CoreError::Precondition(format!(
                "no mirror inversion at tau = {tau}: deviation {:.3e}",
                cert.max_deviation
            )));
        }
        if wrap_phase(phi_n - cert.phi_n).abs() > CERTIFICATE_TOL {
            return Err(CoreError::Precondition(format!(
                "phi_N = {phi_n} does not match the certified {}",
                cert.phi_n
            )));
        }
        Ok(TimingProbe {
            decomposition: SectorDecomposition::with_parallelism(profile, Parallelism::Sequential)?,
            state: state.clone(),
            target: mirror_map(state, cert.phi_n),
            tau,
        })
    }

    pub fn epsilon(&self, delta_t: f64) -> Result<f64> {
        let u = self.decomposition.propagator_with(self.tau + delta_t, Parallelism::Sequential)?;
        let evolved = u.apply(&self.state)?;
        Ok((1.0 - self.target.inner(&evolved).norm_sqr()).clamp(0.0, 1.0))
    }
}

pub fn timing_error(profile: &CouplingProfile, state: &StateVector, tau: f64, phi_n: f64, delta_t: f64) -> Result<f64> {
    TimingProbe::new(profile, state, tau, phi_n)?.epsilon(delta_t)
}

pub fn robustness_fit(
    profile: &CouplingProfile,
    state: &StateVector,
    tau: f64,
    phi_n: f64,
    delta_ts: &[f64],
) -> Result<RobustnessReport> {
    robustness_fit_with(profile, state, tau, phi_n, delta_ts, Parallelism::default())
}

/// Unweighted least-squares slope of `log eps` against `log dt`.
pub fn robustness_fit_with(
    profile: &CouplingProfile,
    state: &StateVector,
    tau: f64,
    phi_n: f64,
    delta_ts: &[f64],
    mode: Parallelism,
) -> Result<RobustnessReport> {
    if delta_ts.len() < 3 {
        return invalid(format!("need at least 3 timing offsets, got {}", delta_ts.len()));
    }
    if let Some(dt) = delta_ts.iter().find(|dt| !(**dt > 0.0 && **dt <= MAX_DELTA_T)) {
        return invalid(format!("timing offset {dt} outside (0, {MAX_DELTA_T}]"));
    }
    let (lo, hi) = delta_ts.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), dt| (lo.min(*dt), hi.max(*dt)));
    if hi / lo < 10.0 {
        return invalid("timing offsets must span at least one decade");
    }
    let probe = TimingProbe::new(profile, state, tau, phi_n)?;
    let errors = mode.try_map(delta_ts, |dt| probe.epsilon(*dt))?;
    let (xs, ys): (Vec<f64>, Vec<f64>) = delta_ts
        .iter()
        .zip(&errors)
        .filter(|(_, e)| **e >= EPSILON_FLOOR)
        .map(|(d, e)| (*d, *e))
        .unzip();
    if xs.len() < 3 {
        return Err(CoreError::InsufficientData {
            usable: xs.len(),
            required: 3,
        });
    }
    Ok(RobustnessReport {
        delta_ts: delta_ts.to_vec(),
        errors,
        fitted_order: loglog_slope(&xs, &ys),
        samples_used: xs.len(),
    })
}
