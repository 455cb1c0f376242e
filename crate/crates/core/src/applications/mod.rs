//! Algorithms on the processor core: the quantum Fourier transform and
//! Pauli-string Hamiltonian simulation with first-order Trotter composition.

mod hamsim;
mod pauli;
mod qft;
mod trotter;

pub use hamsim::{
    data_positions, hamsim_ancilla, hamsim_ancilla_scaled, hamsim_direct, hamsim_direct_scaled, hamsim_program,
    layout_for, HamSimVariant,
};
pub use pauli::{axis_frame, Axis, FrameGate, PauliString};
pub use qft::{bit_reversal, dft_matrix, qft_program};
pub use trotter::{trotter_compose, trotter_error, trotter_error_sweep, TrotterPlan, TrotterTerm};
