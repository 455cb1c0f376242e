use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::dynamics::Layout;
use crate::error::{invalid, CoreError, Result};
use crate::gates::{program_w, GateProgram, ProcessorCore, TargetSpec};
use crate::linalg::{hadamard, phase};

/// Quantum Fourier transform as alternating Hadamards and `W^x` blocks:
/// `H_N W^{N-1} H_{N-1} ... W^1 H_1`, with `W^x` applying `R(pi / 2^{j-x})`
/// to every site `j > x`.
///
/// The textbook circuit leaves the output bit-reversed. With `finish = true` a
/// reversal network is appended: each mirror pair of sites is exchanged with
/// three swaps through the ancilla.
pub fn qft_program(core: &ProcessorCore, n: usize, finish: bool) -> Result<GateProgram> {
    if n != core.n_sites() {
        return invalid(format!("qft on {n} qubits needs a {n}-site core, have {}", core.n_sites()));
    }
    if core.phi_n() != 0.0 {
        return Err(CoreError::Precondition("qft expects a chain with phi_N = 0".into()));
    }
    let layout = Layout::new(n, 1, 0)?;
    let mut program = GateProgram::new(layout);
    for x in 1..=n {
        let mut b = core.builder(layout);
        b.local_at(layout.site(x), hadamard(), format!("H{x}"));
        program = program.then(&b.finish())?;
        if x < n {
            let targets = (1..=n)
                .map(|j| (j > x).then(|| phase(PI / f64::powi(2.0, (j - x) as i32))))
                .collect();
            let w = program_w(core, &TargetSpec::new(x, targets), layout)?;
            program = program.then(&w)?;
        }
    }
    if finish {
        let mut b = core.builder(layout);
        let anc = layout.ancilla(0);
        for j in 1..=n / 2 {
            let (lo, hi) = (layout.site(j), layout.mirror_site(j));
            b.swap(lo, anc).swap(hi, anc).swap(lo, anc);
        }
        program = program.then(&b.finish())?;
    }
    Ok(program)
}

/// `F[j][k] = 2^{-n/2} exp(2 pi i j k / 2^n)`.
pub fn dft_matrix(n: usize) -> DMatrix<Complex64> {
    let dim = 1usize << n;
    let norm = (dim as f64).sqrt().recip();
    DMatrix::from_fn(dim, dim, |j, k| {
        let angle = 2.0 * PI * ((j * k) % dim) as f64 / dim as f64;
        Complex64::from_polar(norm, angle)
    })
}

/// Permutation matrix sending `|b_1 ... b_n>` to `|b_n ... b_1>`.
pub fn bit_reversal(n: usize) -> DMatrix<Complex64> {
    let dim = 1usize << n;
    let mut m = DMatrix::zeros(dim, dim);
    for i in 0..dim {
        let r = (0..n).fold(0, |acc, b| acc | (((i >> b) & 1) << (n - 1 - b)));
        m[(r, i)] = Complex64::new(1.0, 0.0);
    }
    m
}
