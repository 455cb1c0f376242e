//! Controlled multi-target gates assembled from chain periods, one ancilla
//! swap per period pair, and local gates.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::dynamics::{Layout, StateVector};
use crate::error::{invalid, CoreError, Result};
use crate::linalg::{hadamard, identity, is_unitary2, phase, Mat2};

use super::abc::{abc_decompose, reflection_conjugator};
use super::program::{GateInstruction, GateProgram, ProcessorCore, ProgramBuilder};

/// Per-site targets of a controlled multi-target gate, `None` meaning identity.
/// The control's own entry is ignored.
#[derive(Debug, Clone, PartialEq)]
pub struct TargetSpec {
    /// 1-based control site.
    pub control: usize,
    pub targets: Vec<Option<Mat2>>,
}

impl TargetSpec {
    pub fn new(control: usize, targets: Vec<Option<Mat2>>) -> Self {
        TargetSpec { control, targets }
    }

    /// The same target on every site except the control.
    pub fn uniform(n_sites: usize, control: usize, target: Mat2) -> Self {
        TargetSpec {
            control,
            targets: (1..=n_sites).map(|j| (j != control).then_some(target)).collect(),
        }
    }

    /// Targets other than the control, as `(0-based qubit, matrix)`.
    /// `|0><0|_x (x) I + |1><1|_x (x) prod_j W_j` on `n_sites` qubits, site 1 most significant.
    pub fn controlled_unitary(&self) -> DMatrix<Complex64> {
        let kron = |ops: &[Mat2]| {
            ops.iter().fold(DMatrix::from_element(1, 1, Complex64::new(1.0, 0.0)), |acc, m| {
                acc.kronecker(&DMatrix::from_fn(2, 2, |r, c| m[(r, c)]))
            })
        };
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let mut off = vec![identity(); self.targets.len()];
        let mut on: Vec<Mat2> = self.targets.iter().map(|t| t.unwrap_or_else(identity)).collect();
        off[self.control - 1] = Mat2::new(one, zero, zero, zero);
        on[self.control - 1] = Mat2::new(zero, zero, zero, one);
        kron(&off) + kron(&on)
    }

    pub fn active(&self) -> impl Iterator<Item = (usize, &Mat2)> {
        let x = self.control;
        self.targets
            .iter()
            .enumerate()
            .filter(move |(j, _)| j + 1 != x)
            .filter_map(|(j, t)| t.as_ref().map(|m| (j, m)))
    }
}

fn check_control(core: &ProcessorCore, x: usize, layout: &Layout) -> Result<()> {
    core.check_layout(layout)?;
    if layout.ancilla_count == 0 {
        return Err(CoreError::InvalidLayout("controlled gates need one ancilla".into()));
    }
    if x == 0 || x > layout.core_sites {
        return invalid(format!("control site {x} outside 1..={}", layout.core_sites));
    }
    Ok(())
}

/// Phase gates removing `exp(-(2n - s_x) i phi_N)` after a `Z^x` block:
/// `R(2 phi_N)` on every data qubit and net `R(phi_N)` on the control.
///
/// `locations[q]` is the current physical position of chain qubit `q`.
pub fn phase_correction(phi_n: f64, x: usize, n_sites: usize, locations: &[usize]) -> Vec<GateInstruction> {
    if phi_n == 0.0 {
        return Vec::new();
    }
    (0..n_sites)
        .map(|q| {
            let angle = if q + 1 == x { phi_n } else { 2.0 * phi_n };
            GateInstruction::Local {
                qubit: locations[q],
                label: format!("R({angle})"),
                matrix: phase(angle),
            }
        })
        .collect()
}

/// `U S_x U`: one period, swap of the mirror site of `x` with ancilla 0, one period.
fn z_block(core: &ProcessorCore, b: &mut ProgramBuilder, x: usize, correct: bool) {
    let layout = b.layout();
    b.evolve()
        .swap(layout.mirror_site(x), layout.ancilla(0))
        .evolve();
    if correct {
        let fix = phase_correction(core.phi_n(), x, layout.core_sites, b.locations());
        b.extend(fix);
    }
}

/// `Z^x`: controlled-Z from site `x` onto every other chain qubit. Ends with
/// the control on ancilla 0 and site `x` holding the ancilla's |0>. For
/// `phi_N != 0` the phase correction is appended.
pub fn program_z(core: &ProcessorCore, x: usize, layout: Layout) -> Result<GateProgram> {
    check_control(core, x, &layout)?;
    let mut b = core.builder(layout);
    z_block(core, &mut b, x, true);
    Ok(b.finish())
}

/// `Z^x` without phase correction; imprints `exp(-(2n - s_x) i phi_N)`.
pub fn program_z_uncorrected(core: &ProcessorCore, x: usize, layout: Layout) -> Result<GateProgram> {
    check_control(core, x, &layout)?;
    let mut b = core.builder(layout);
    z_block(core, &mut b, x, false);
    Ok(b.finish())
}

/// `W^x = A Z^x B Z^x C`: applies `prod_j W_j` to the other chain qubits when
/// site `x` is |1>. Four periods, two swaps; every qubit ends where it started
/// and the ancilla returns to |0>.
pub fn program_w(core: &ProcessorCore, spec: &TargetSpec, layout: Layout) -> Result<GateProgram> {
    let x = spec.control;
    check_control(core, x, &layout)?;
    if spec.targets.len() != layout.core_sites {
        return invalid(format!(
            "expected {} targets, got {}",
            layout.core_sites,
            spec.targets.len()
        ));
    }
    let mut factors = Vec::new();
    for (q, w) in spec.active() {
        if !is_unitary2(w) {
            return invalid(format!("target on site {} is not unitary", q + 1));
        }
        factors.push((q, abc_decompose(w)?));
    }

    let mut b = core.builder(layout);
    for (q, f) in &factors {
        b.local_on(*q, f.c, format!("C{}", q + 1));
    }
    z_block(core, &mut b, x, true);
    for (q, f) in &factors {
        b.local_on(*q, f.b, format!("B{}", q + 1));
    }
    z_block(core, &mut b, x, true);
    for (q, f) in &factors {
        b.local_on(*q, f.a, format!("A{}", q + 1));
    }
    let alpha: f64 = factors.iter().map(|(_, f)| f.alpha).sum();
    if alpha != 0.0 {
        b.local_on(x - 1, phase(alpha), "R(alpha)");
    }
    Ok(b.finish())
}

/// `V^x = A Z^x A^dagger` with `A_j Z A_j^dagger = V(theta_j, phi_j)` on every
/// site but the control. The control ends on ancilla 0, as for `Z^x`.
pub fn program_v(core: &ProcessorCore, x: usize, angles: &[(f64, f64)], layout: Layout) -> Result<GateProgram> {
    check_control(core, x, &layout)?;
    if angles.len() != layout.core_sites {
        return invalid(format!("expected {} angle pairs, got {}", layout.core_sites, angles.len()));
    }
    let conj: Vec<(usize, Mat2)> = angles
        .iter()
        .enumerate()
        .filter(|(q, _)| q + 1 != x)
        .map(|(q, &(t, p))| (q, reflection_conjugator(t, p)))
        .collect();
    let mut b = core.builder(layout);
    for (q, a) in &conj {
        b.local_on(*q, a.adjoint(), format!("A{}^dag", q + 1));
    }
    z_block(core, &mut b, x, true);
    for (q, a) in &conj {
        b.local_on(*q, *a, format!("A{}", q + 1));
    }
    Ok(b.finish())
}

/// Controlled multi-target NOT from site 1, built from one `Z^1`.
pub fn cat_program(core: &ProcessorCore) -> Result<GateProgram> {
    if core.phi_n() != 0.0 {
        return Err(CoreError::Precondition("cat preparation expects phi_N = 0".into()));
    }
    let n = core.n_sites();
    if n < 2 {
        return invalid("cat state needs at least two sites");
    }
    let layout = Layout::new(n, 1, 0)?;
    let mut b = core.builder(layout);
    for q in 1..n {
        b.local_on(q, hadamard(), format!("H{}", q + 1));
    }
    z_block(core, &mut b, 1, false);
    for q in 1..n {
        b.local_on(q, hadamard(), format!("H{}", q + 1));
    }
    Ok(b.finish())
}

/// Runs [`cat_program`] on `|+> |0...0> |0>_a`.
pub fn make_cat(core: &ProcessorCore) -> Result<(GateProgram, StateVector)> {
    let program = cat_program(core)?;
    let layout = program.layout;
    let mut amps = vec![Complex64::new(0.0, 0.0); layout.dim()];
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    amps[0] = h;
    amps[1 << (layout.total_qubits() - 1)] = h;
    let input = StateVector::from_amplitudes(layout, amps)?;
    let out = core.execute(&program, &input)?;
    Ok((program, out))
}

/// Fidelity of the program's output with `(|0...0> + |1...1>)/sqrt(2)` on the
/// final positions of the chain qubits.
pub fn cat_fidelity(program: &GateProgram, state: &StateVector) -> Result<f64> {
    let n = program.layout.core_sites;
    let finals = program.final_locations();
    let positions: Vec<usize> = (0..n).map(|q| finals[q]).collect();
    let amps = state.project_logical(&positions)?;
    let overlap = (amps[0] + amps[amps.len() - 1]) * FRAC_1_SQRT_2;
    Ok(overlap.norm_sqr())
}
