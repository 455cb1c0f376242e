use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::chain::CouplingProfile;
use crate::error::{invalid, CoreError, Result};
use crate::gates::GateProgram;

/// Instruction and switching tallies for one computation.
///
/// `switch_events` and `switched_time` describe the fully-switched baseline and
/// are zero for a bare program census.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct CostReport {
    pub free_evolutions: usize,
    pub swaps: usize,
    pub local_ops: usize,
    pub switch_events: usize,
    pub core_time: f64,
    pub switched_time: f64,
}

impl CostReport {
    /// Switching events on the core side: every period and every swap.
    pub fn core_events(&self) -> usize {
        self.free_evolutions + self.swaps
    }
}

pub fn cost_of_program(program: &GateProgram, tau: f64) -> CostReport {
    let census = program.census();
    CostReport {
        free_evolutions: census.free_evolutions,
        swaps: census.swaps,
        local_ops: census.locals,
        switch_events: 0,
        core_time: tau * census.free_evolutions as f64,
        switched_time: 0.0,
    }
}

/// Sequential nearest-neighbour transfer time `sum_j pi / (2 omega_j)` and the
/// lower bound `(N - 1) pi / (2 omega_max)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransferTime {
    pub time: f64,
    pub bound: f64,
    /// Every term is at least `pi / (2 omega_max)`, so the bound holds exactly.
    pub bound_holds: bool,
}

pub fn switched_transfer_time(profile: &CouplingProfile) -> Result<TransferTime> {
    profile.ensure_shape()?;
    if let Some((j, w)) = profile.omegas.iter().enumerate().find(|(_, w)| !(**w > 0.0 && w.is_finite())) {
        return invalid(format!("coupling omega_{} = {w} must be positive", j + 1));
    }
    let per_step = PI / (2.0 * profile.max_omega());
    let terms: Vec<f64> = profile.omegas.iter().map(|w| PI / (2.0 * w)).collect();
    Ok(TransferTime {
        time: terms.iter().sum(),
        bound: profile.omegas.len() as f64 * per_step,
        bound_holds: terms.iter().all(|t| *t >= per_step),
    })
}

/// `2 pi (N - 1) / N`, the transfer-time floor for couplings capped by `N / 4`.
pub fn christandl_transfer_bound(n_sites: usize) -> f64 {
    2.0 * PI * (n_sites as f64 - 1.0) / n_sites as f64
}

/// One contiguous on-interval of the coupling between line positions
/// `coupling` and `coupling + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SwitchEvent {
    pub coupling: usize,
    pub start: f64,
    pub end: f64,
}

/// As-soon-as-possible schedule of the QFT on a line of `n` qubits with
/// switchable nearest-neighbour couplings.
///
/// Control `x` walks right through the line: at each step the controlled
/// phase with its right neighbour and the swap that moves it along use the
/// same coupling back to back, which is one event of two primitives. Every
/// primitive lasts `pi / (2 omega_max)`. Events on disjoint pairs overlap in
/// time. Hadamards are local and take no switching.
pub fn switched_qft_schedule(n: usize, omega_max: f64) -> Vec<SwitchEvent> {
    let primitive = PI / (2.0 * omega_max);
    let mut free_at = vec![0.0f64; n];
    let mut events = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for x in 0..n.saturating_sub(1) {
        // After controls 0..x have passed, control x sits at position 0.
        for p in 0..n - 1 - x {
            let start = free_at[p].max(free_at[p + 1]);
            let end = start + 2.0 * primitive;
            free_at[p] = end;
            free_at[p + 1] = end;
            events.push(SwitchEvent { coupling: p, start, end });
        }
    }
    events
}

/// Census of the core QFT program on `n` qubits, without building it.
pub fn core_qft_census(n: usize) -> (usize, usize, usize) {
    let w = n.saturating_sub(1);
    let targets = n * w / 2;
    // C, B, A per target plus one phase gate per W; one Hadamard per qubit.
    (4 * w, 2 * w, n + 3 * targets + w)
}

/// Core-model versus switched-baseline QFT cost on `n` qubits, with the core
/// running a Christandl chain (period `pi`) and the baseline capped by the
/// same maximum coupling.
pub fn switched_qft_cost(n: usize) -> Result<CostReport> {
    if n == 0 {
        return invalid("qft needs at least one qubit");
    }
    let (free_evolutions, swaps, local_ops) = core_qft_census(n);
    let omega_max = if n >= 2 { CouplingProfile::christandl(n)?.max_omega() } else { 1.0 };
    let events = switched_qft_schedule(n, omega_max);
    Ok(CostReport {
        free_evolutions,
        swaps,
        local_ops,
        switch_events: events.len(),
        core_time: PI * free_evolutions as f64,
        switched_time: events.iter().map(|e| e.end).fold(0.0, f64::max),
    })
}

/// Least-squares fit `y ~ c x^2` with relative L2 residual `||y - c x^2|| / ||y||`.
pub fn quadratic_fit(xs: &[f64], ys: &[f64]) -> Result<(f64, f64)> {
    if xs.len() != ys.len() || xs.is_empty() {
        return invalid("quadratic fit needs equal, non-empty samples");
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| x * x * y).sum();
    let sxx: f64 = xs.iter().map(|x| x.powi(4)).sum();
    let c = sxy / sxx;
    let res: f64 = xs.iter().zip(ys).map(|(x, y)| (y - c * x * x).powi(2)).sum::<f64>().sqrt();
    let norm: f64 = ys.iter().map(|y| y * y).sum::<f64>().sqrt();
    Ok((c, res / norm))
}

/// Largest concatenation depth whose counts fit in `u64`.
pub const MAX_CONCAT_LEVELS: u32 = 20;

/// Gate counting for one logical `W^x` step under `levels` of 7-qubit code
/// concatenation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConcatCost {
    pub levels: u32,
    pub targets_per_gate: u64,
    pub w_gate_count: u64,
    pub switched_ops: u64,
}

/// Six `W^x` gates per encoded step regardless of depth, each touching
/// `7^levels` targets; the switched baseline needs one pairwise operation per
/// target of each gate.
pub fn concat_cost(levels: u32) -> Result<ConcatCost> {
    if levels > MAX_CONCAT_LEVELS {
        return Err(CoreError::SizeLimit {
            what: "concatenation levels",
            value: levels as usize,
            max: MAX_CONCAT_LEVELS as usize,
        });
    }
    let targets = 7u64.pow(levels);
    Ok(ConcatCost {
        levels,
        targets_per_gate: targets,
        w_gate_count: 6,
        switched_ops: 6 * targets,
    })
}
