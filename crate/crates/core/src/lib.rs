//! Simulation and analysis toolkit for an always-on engineered spin-chain
//! processor core with a passive qubit store.
//!
//! Multi-qubit gates are assembled from three primitives: free evolution of
//! the mirror-inverting chain for one period, swaps between the chain and an
//! ancilla or store site, and single-qubit gates.

pub mod analysis;
pub mod applications;
pub mod chain;
pub mod dynamics;
pub mod error;
pub mod gates;
pub mod io;
pub mod linalg;
pub mod parallel;

pub use chain::{CouplingProfile, JacobiMatrix, MirrorCertificate, Spectrum};
pub use dynamics::{Layout, StateVector};
pub use gates::{GateInstruction, GateProgram, ProcessorCore};
pub use error::{CoreError, Result};

pub use parallel::Parallelism;
