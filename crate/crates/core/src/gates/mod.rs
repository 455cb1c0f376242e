//! Gate constructions on the processor core: `Z^x`, `V^x`, `W^x`, phase
//! correction for chains with nonzero `phi_N`, and cat-state preparation.

mod abc;
mod construct;
mod program;

pub use abc::{abc_decompose, reflection, reflection_conjugator, zyz_angles, AbcFactors, ZyzAngles};
pub use construct::{
    cat_fidelity, cat_program, make_cat, phase_correction, program_v, program_w, program_z, program_z_uncorrected,
    TargetSpec,
};
pub use program::{Census, GateInstruction, GateProgram, ProcessorCore, ProgramBuilder};
