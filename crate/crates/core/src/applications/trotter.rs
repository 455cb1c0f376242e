use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::gates::{GateProgram, ProcessorCore};
use crate::linalg::{hermitian_expm, phase_aligned_operator_distance};
use crate::parallel::Parallelism;

use super::hamsim::{data_positions, hamsim_program, layout_for, HamSimVariant};
use super::pauli::PauliString;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrotterTerm {
    pub mask: PauliString,
    pub coefficient: f64,
}

/// First-order product formula for `H = sum_k c_k P_k` over `steps` steps of `dt`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrotterPlan {
    pub terms: Vec<TrotterTerm>,
    pub dt: f64,
    pub steps: usize,
}

impl TrotterPlan {
    pub fn new(terms: Vec<(PauliString, f64)>, dt: f64, steps: usize) -> Result<Self> {
        if terms.is_empty() {
            return invalid("trotter plan needs at least one term");
        }
        if steps == 0 {
            return invalid("trotter plan needs at least one step");
        }
        if !(dt > 0.0 && dt.is_finite()) {
            return invalid(format!("dt must be positive, got {dt}"));
        }
        let n = terms[0].0.len();
        if terms.iter().any(|(m, _)| m.len() != n) {
            return invalid("all masks must cover the same sites");
        }
        Ok(TrotterPlan {
            terms: terms
                .into_iter()
                .map(|(mask, coefficient)| TrotterTerm { mask, coefficient })
                .collect(),
            dt,
            steps,
        })
    }

    /// Plan covering `total_time` with steps of (approximately) `dt`.
    pub fn for_total_time(terms: Vec<(PauliString, f64)>, total_time: f64, dt: f64) -> Result<Self> {
        let steps = (total_time / dt).round().max(1.0) as usize;
        Self::new(terms, total_time / steps as f64, steps)
    }

    pub fn n_data(&self) -> usize {
        self.terms[0].mask.len()
    }

    pub fn total_time(&self) -> f64 {
        self.dt * self.steps as f64
    }

    /// `sum_k c_k P_k` as a dense matrix over the data sites.
    pub fn hamiltonian(&self) -> DMatrix<Complex64> {
        let dim = 1usize << self.n_data();
        self.terms.iter().fold(DMatrix::zeros(dim, dim), |acc, t| {
            acc + t.mask.matrix().map(|z| z * t.coefficient)
        })
    }

    pub fn exact_unitary(&self) -> DMatrix<Complex64> {
        hermitian_expm(&self.hamiltonian(), self.total_time())
    }
}

/// Concatenates the per-term programs `steps` times.
pub fn trotter_compose(core: &ProcessorCore, plan: &TrotterPlan, variant: HamSimVariant) -> Result<GateProgram> {
    let per_step = plan
        .terms
        .iter()
        .map(|t| hamsim_program(core, &t.mask, t.coefficient, plan.dt, variant))
        .collect::<Result<Vec<_>>>()?;
    let mut program = GateProgram::new(layout_for(plan.n_data(), variant)?);
    for _ in 0..plan.steps {
        for p in &per_step {
            program = program.then(p)?;
        }
    }
    Ok(program)
}

/// Operator-norm distance (up to global phase) between the composed program
/// on the data sites and the exact evolution.
pub fn trotter_error(core: &ProcessorCore, plan: &TrotterPlan, variant: HamSimVariant) -> Result<f64> {
    let program = trotter_compose(core, plan, variant)?;
    let u = core.logical_unitary_with(&program, &data_positions(plan.n_data()), Parallelism::Sequential)?;
    Ok(phase_aligned_operator_distance(&plan.exact_unitary(), &u))
}

/// Trotter error at each step size for a fixed total time.
pub fn trotter_error_sweep(
    core: &ProcessorCore,
    terms: &[(PauliString, f64)],
    total_time: f64,
    dts: &[f64],
    mode: Parallelism,
) -> Result<Vec<f64>> {
    mode.try_map(dts, |&dt| {
        let plan = TrotterPlan::for_total_time(terms.to_vec(), total_time, dt)?;
        trotter_error(core, &plan, HamSimVariant::Ancilla)
    })
}
