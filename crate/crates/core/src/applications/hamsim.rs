//! `exp(-i c H_A dt)` for Pauli strings `H_A`, on a chain of `N + 1` sites
//! whose first site stores the parity of the data sites `2..=N+1`.

use serde::{Deserialize, Serialize};

use crate::dynamics::Layout;
use crate::error::{invalid, CoreError, Result};
use crate::gates::{program_w, GateProgram, ProcessorCore, ProgramBuilder, TargetSpec};
use crate::linalg::{hadamard, pauli_z, z_rotation};

use super::pauli::{axis_frame, Axis, PauliString};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HamSimVariant {
    /// Parity via two `W^0` gates: eight periods, works for any mask.
    Ancilla,
    /// Parity via two bare periods: two periods, no ancilla, full masks only.
    Direct,
}

/// Qubit index of data site `j` (1-based in the mask). Site 0 is the parity
/// site at chain position 1; the mirror parity site is chain position `N + 1`.
pub fn data_qubit(j: usize) -> usize {
    j
}

fn check_core(core: &ProcessorCore, mask: &PauliString) -> Result<()> {
    if core.n_sites() != mask.len() + 1 {
        return invalid(format!(
            "a {}-site mask needs a {}-site core, have {}",
            mask.len(),
            mask.len() + 1,
            core.n_sites()
        ));
    }
    if core.phi_n() != 0.0 {
        return Err(CoreError::Precondition("hamiltonian simulation expects phi_N = 0".into()));
    }
    Ok(())
}

pub fn layout_for(mask_len: usize, variant: HamSimVariant) -> Result<Layout> {
    match variant {
        HamSimVariant::Ancilla => Layout::new(mask_len + 1, 1, 0),
        HamSimVariant::Direct => Layout::new(mask_len + 1, 0, 0),
    }
}

fn frame_in(b: &mut ProgramBuilder, mask: &PauliString) {
    for f in axis_frame(mask) {
        b.local_at(data_qubit(f.site + 1), f.matrix.adjoint(), format!("F{}^dag", f.site + 1));
    }
}

fn frame_out(b: &mut ProgramBuilder, mask: &PauliString) {
    for f in axis_frame(mask) {
        b.local_at(data_qubit(f.site + 1), f.matrix, format!("F{}", f.site + 1));
    }
}

/// `H_0 W^0 H_0 T_0(c dt) H_0 W^0 H_0`, with `W^0` applying `Z` to every
/// involved site, wrapped in the axis frame.
pub fn hamsim_ancilla_scaled(core: &ProcessorCore, mask: &PauliString, coefficient: f64, dt: f64) -> Result<GateProgram> {
    check_core(core, mask)?;
    if mask.weight() == 0 {
        return invalid("empty mask");
    }
    let layout = layout_for(mask.len(), HamSimVariant::Ancilla)?;
    let targets = std::iter::once(None)
        .chain(mask.axes().iter().map(|a| (*a != Axis::I).then(pauli_z)))
        .collect();
    let w0 = program_w(core, &TargetSpec::new(1, targets), layout)?;

    let parity = layout.site(1);
    let mut pre = core.builder(layout);
    frame_in(&mut pre, mask);
    pre.local_at(parity, hadamard(), "H0");
    let mut mid = core.builder(layout);
    mid.local_at(parity, hadamard(), "H0")
        .local_at(parity, z_rotation(coefficient * dt), "T0")
        .local_at(parity, hadamard(), "H0");
    let mut post = core.builder(layout);
    post.local_at(parity, hadamard(), "H0");
    frame_out(&mut post, mask);

    let program = pre.finish().then(&w0)?.then(&mid.finish())?.then(&w0)?.then(&post.finish())?;
    Ok(annotate(program, mask.len()))
}

/// Records the site roles: parity on chain site 1, data on sites `2..=r+1`,
/// mirror parity (direct variant) on site `r + 1`.
fn annotate(program: GateProgram, r: usize) -> GateProgram {
    program
        .with_metadata("parity_site", "1")
        .with_metadata("data_sites", format!("2..={}", r + 1))
        .with_metadata("mirror_parity_site", format!("{}", r + 1))
}

pub fn hamsim_ancilla(core: &ProcessorCore, mask: &PauliString, dt: f64) -> Result<GateProgram> {
    hamsim_ancilla_scaled(core, mask, 1.0, dt)
}

/// `H_0 U H_0bar T_0bar(c dt) H_0bar U H_0`: one period moves the parity of
/// the data sites onto the mirror parity site, a second period undoes it.
pub fn hamsim_direct_scaled(core: &ProcessorCore, mask: &PauliString, coefficient: f64, dt: f64) -> Result<GateProgram> {
    check_core(core, mask)?;
    if mask.weight() != mask.len() {
        return Err(CoreError::Unsupported(format!(
            "direct variant needs every data site involved, mask {mask} has identities"
        )));
    }
    let layout = layout_for(mask.len(), HamSimVariant::Direct)?;
    let (parity, mirror) = (layout.site(1), layout.mirror_site(1));
    let mut b = core.builder(layout);
    frame_in(&mut b, mask);
    b.local_at(parity, hadamard(), "H0")
        .evolve()
        .local_at(mirror, hadamard(), "H0bar")
        .local_at(mirror, z_rotation(coefficient * dt), "T0bar")
        .local_at(mirror, hadamard(), "H0bar")
        .evolve()
        .local_at(parity, hadamard(), "H0");
    frame_out(&mut b, mask);
    Ok(annotate(b.finish(), mask.len()))
}

pub fn hamsim_direct(core: &ProcessorCore, mask: &PauliString, dt: f64) -> Result<GateProgram> {
    hamsim_direct_scaled(core, mask, 1.0, dt)
}

pub fn hamsim_program(
    core: &ProcessorCore,
    mask: &PauliString,
    coefficient: f64,
    dt: f64,
    variant: HamSimVariant,
) -> Result<GateProgram> {
    match variant {
        HamSimVariant::Ancilla => hamsim_ancilla_scaled(core, mask, coefficient, dt),
        HamSimVariant::Direct => hamsim_direct_scaled(core, mask, coefficient, dt),
    }
}

/// Data-qubit positions `1..=N` of a Hamiltonian-simulation layout.
pub fn data_positions(mask_len: usize) -> Vec<usize> {
    (1..=mask_len).map(data_qubit).collect()
}
