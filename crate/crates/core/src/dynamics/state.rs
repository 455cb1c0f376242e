use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, CoreError, Result};
use crate::linalg::{is_unitary2, Mat2};

/// Largest total qubit count a [`StateVector`] may span.
pub const MAX_QUBITS: usize = 16;
/// Norm tolerance for state vectors.
pub const NORM_TOL: f64 = 1e-10;

/// Qubit registers: chain sites first, then ancillas, then the store.
///
/// Qubit index `q` addresses bit `M - 1 - q` of the amplitude index, so chain
/// site 1 is the most significant bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Layout {
    pub core_sites: usize,
    pub ancilla_count: usize,
    pub store_sites: usize,
}

impl Layout {
    pub fn new(core_sites: usize, ancilla_count: usize, store_sites: usize) -> Result<Self> {
        let layout = Layout {
            core_sites,
            ancilla_count,
            store_sites,
        };
        layout.check()?;
        Ok(layout)
    }

    pub fn core_only(core_sites: usize) -> Result<Self> {
        Self::new(core_sites, 0, 0)
    }

    pub fn check(&self) -> Result<()> {
        if self.core_sites == 0 {
            return Err(CoreError::InvalidLayout("core must have at least one site".into()));
        }
        if self.total_qubits() > MAX_QUBITS {
            return Err(CoreError::SizeLimit {
                what: "total qubits",
                value: self.total_qubits(),
                max: MAX_QUBITS,
            });
        }
        Ok(())
    }

    pub fn total_qubits(&self) -> usize {
        self.core_sites + self.ancilla_count + self.store_sites
    }

    pub fn dim(&self) -> usize {
        1 << self.total_qubits()
    }

    /// Qubit index of 1-based chain site `site`.
    pub fn site(&self, site: usize) -> usize {
        debug_assert!(site >= 1 && site <= self.core_sites);
        site - 1
    }

    /// Qubit index of the mirror partner of 1-based site `site`.
    pub fn mirror_site(&self, site: usize) -> usize {
        self.core_sites - site
    }

    pub fn ancilla(&self, i: usize) -> usize {
        debug_assert!(i < self.ancilla_count);
        self.core_sites + i
    }

    pub fn store(&self, i: usize) -> usize {
        debug_assert!(i < self.store_sites);
        self.core_sites + self.ancilla_count + i
    }

    pub(crate) fn bit(&self, qubit: usize) -> usize {
        self.total_qubits() - 1 - qubit
    }
}

/// A computational basis configuration `|s_1 s_2 ... s_M>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisState {
    pub bits: Vec<u8>,
}

impl BasisState {
    pub fn from_index(index: usize, n_qubits: usize) -> Self {
        BasisState {
            bits: (0..n_qubits).map(|q| ((index >> (n_qubits - 1 - q)) & 1) as u8).collect(),
        }
    }

    pub fn index(&self) -> usize {
        self.bits.iter().fold(0, |acc, b| (acc << 1) | usize::from(*b))
    }

    /// Parses `"0110"`; whitespace and `|`, `>` are ignored.
    pub fn parse(s: &str) -> Result<Self> {
        let bits: Vec<u8> = s
            .chars()
            .filter(|c| !matches!(c, '|' | '>' | ' '))
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(CoreError::InvalidArgument(format!("bad basis character {other:?}"))),
            })
            .collect::<Result<_>>()?;
        if bits.is_empty() {
            return invalid("empty basis string");
        }
        Ok(BasisState { bits })
    }

    /// Number of spin-up sites among the first `core` bits.
    pub fn core_weight(&self, core: usize) -> usize {
        self.bits[..core].iter().filter(|b| **b == 1).count()
    }
}

/// Hamming weight and site-reversal of the core part of an amplitude index.
pub(crate) fn core_bits(index: usize, layout: &Layout) -> (usize, usize) {
    let rest = layout.ancilla_count + layout.store_sites;
    (index >> rest, index & ((1 << rest) - 1))
}

pub(crate) fn reverse_bits(x: usize, width: usize) -> usize {
    (0..width).fold(0, |acc, i| acc | (((x >> i) & 1) << (width - 1 - i)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateVector {
    pub layout: Layout,
    pub amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn from_amplitudes(layout: Layout, amplitudes: Vec<Complex64>) -> Result<Self> {
        layout.check()?;
        if amplitudes.len() != layout.dim() {
            return invalid(format!(
                "expected {} amplitudes for {} qubits, got {}",
                layout.dim(),
                layout.total_qubits(),
                amplitudes.len()
            ));
        }
        let state = StateVector { layout, amplitudes };
        let norm = state.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return invalid(format!("state norm {norm} differs from 1"));
        }
        Ok(state)
    }

    pub fn basis(layout: Layout, index: usize) -> Result<Self> {
        layout.check()?;
        if index >= layout.dim() {
            return invalid(format!("basis index {index} out of range"));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); layout.dim()];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { layout, amplitudes })
    }

    pub fn from_basis(layout: Layout, bits: &BasisState) -> Result<Self> {
        if bits.bits.len() != layout.total_qubits() {
            return invalid(format!(
                "basis state has {} bits, layout has {} qubits",
                bits.bits.len(),
                layout.total_qubits()
            ));
        }
        Self::basis(layout, bits.index())
    }

    pub fn zero(layout: Layout) -> Result<Self> {
        Self::basis(layout, 0)
    }

    /// [`StateVector::random`] driven by a seeded ChaCha8 generator.
    pub fn random_seeded(layout: Layout, seed: u64) -> Result<Self> {
        use rand::SeedableRng;
        Self::random(layout, &mut rand_chacha::ChaCha8Rng::seed_from_u64(seed))
    }

    /// Haar-random state: normalized complex Gaussian amplitudes.
    pub fn random<R: rand::Rng + ?Sized>(layout: Layout, rng: &mut R) -> Result<Self> {
        use rand_distr::{Distribution, StandardNormal};
        layout.check()?;
        let mut amplitudes: Vec<Complex64> = (0..layout.dim())
            .map(|_| Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng)))
            .collect();
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        amplitudes.iter_mut().for_each(|a| *a /= norm);
        Ok(StateVector { layout, amplitudes })
    }

    pub fn n_qubits(&self) -> usize {
        self.layout.total_qubits()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn scaled(&self, factor: Complex64) -> StateVector {
        StateVector {
            layout: self.layout,
            amplitudes: self.amplitudes.iter().map(|a| a * factor).collect(),
        }
    }

    pub fn amplitude(&self, bits: &str) -> Result<Complex64> {
        let b = BasisState::parse(bits)?;
        if b.bits.len() != self.n_qubits() {
            return invalid("basis string length does not match layout");
        }
        Ok(self.amplitudes[b.index()])
    }

    /// Probability mass in each core excitation sector `w = 0..=N`.
    pub fn weight_distribution(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.layout.core_sites + 1];
        for (i, a) in self.amplitudes.iter().enumerate() {
            let (core, _) = core_bits(i, &self.layout);
            out[core.count_ones() as usize] += a.norm_sqr();
        }
        out
    }

    /// Amplitudes on `logical.len()` qubits read from the physical positions
    /// `logical[k]`, with every other qubit projected onto |0>. Not renormalised.
    pub fn project_logical(&self, logical: &[usize]) -> Result<Vec<Complex64>> {
        let m = self.n_qubits();
        if logical.iter().any(|&q| q >= m) {
            return invalid("logical position out of range");
        }
        let k = logical.len();
        let mut out = vec![Complex64::new(0.0, 0.0); 1 << k];
        for (idx, slot) in out.iter_mut().enumerate() {
            let mut phys = 0usize;
            for (pos, &q) in logical.iter().enumerate() {
                if (idx >> (k - 1 - pos)) & 1 == 1 {
                    phys |= 1 << self.layout.bit(q);
                }
            }
            *slot = self.amplitudes[phys];
        }
        Ok(out)
    }

    /// Embeds a `logical.len()`-qubit amplitude vector at the given physical
    /// positions; all other qubits are |0>.
    pub fn embed_logical(layout: Layout, logical: &[usize], amplitudes: &[Complex64]) -> Result<Self> {
        layout.check()?;
        let k = logical.len();
        if amplitudes.len() != 1 << k {
            return invalid("amplitude count does not match logical register");
        }
        if logical.iter().any(|&q| q >= layout.total_qubits()) {
            return invalid("logical position out of range");
        }
        let mut full = vec![Complex64::new(0.0, 0.0); layout.dim()];
        for (idx, a) in amplitudes.iter().enumerate() {
            let mut phys = 0usize;
            for (pos, &q) in logical.iter().enumerate() {
                if (idx >> (k - 1 - pos)) & 1 == 1 {
                    phys |= 1 << layout.bit(q);
                }
            }
            full[phys] = *a;
        }
        StateVector::from_amplitudes(layout, full)
    }
}

/// Applies a single-qubit unitary to `qubit`.
pub fn apply_local(state: &StateVector, qubit: usize, u: &Mat2) -> Result<StateVector> {
    if !is_unitary2(u) {
        return invalid("local gate is not unitary");
    }
    if qubit >= state.n_qubits() {
        return invalid(format!("qubit {qubit} out of range"));
    }
    Ok(apply_local_unchecked(state, qubit, u))
}

pub(crate) fn apply_local_unchecked(state: &StateVector, qubit: usize, u: &Mat2) -> StateVector {
    let mask = 1usize << state.layout.bit(qubit);
    let mut out = state.amplitudes.clone();
    for i in 0..out.len() {
        if i & mask == 0 {
            let (a0, a1) = (state.amplitudes[i], state.amplitudes[i | mask]);
            out[i] = u[(0, 0)] * a0 + u[(0, 1)] * a1;
            out[i | mask] = u[(1, 0)] * a0 + u[(1, 1)] * a1;
        }
    }
    StateVector {
        layout: state.layout,
        amplitudes: out,
    }
}

/// Exchanges the contents of qubits `a` and `b`.
pub fn swap_qubits(state: &StateVector, a: usize, b: usize) -> Result<StateVector> {
    if a == b {
        return invalid(format!("swap needs two distinct qubits, got {a} twice"));
    }
    let m = state.n_qubits();
    if a >= m || b >= m {
        return invalid("swap qubit out of range");
    }
    let (ma, mb) = (1usize << state.layout.bit(a), 1usize << state.layout.bit(b));
    let mut out = state.amplitudes.clone();
    for (i, slot) in out.iter_mut().enumerate() {
        let (ba, bb) = (i & ma != 0, i & mb != 0);
        if ba != bb {
            *slot = state.amplitudes[i ^ ma ^ mb];
        }
    }
    Ok(StateVector {
        layout: state.layout,
        amplitudes: out,
    })
}

/// `|<a|b>|^2`.
pub fn fidelity_up_to_global_phase(a: &StateVector, b: &StateVector) -> Result<f64> {
    if a.layout != b.layout {
        return invalid("fidelity of states on different layouts");
    }
    Ok(a.inner(b).norm_sqr())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{hadamard, identity, phase};
    use std::f64::consts::FRAC_1_SQRT_2;

    fn l(n: usize) -> Layout {
        Layout::core_only(n).unwrap()
    }

    #[test]
    fn layout_caps_total_qubits() {
        assert!(Layout::new(10, 1, 5).is_ok());
        assert!(matches!(Layout::new(10, 2, 5), Err(CoreError::SizeLimit { .. })));
        assert!(Layout::new(0, 1, 0).is_err());
    }

    #[test]
    fn site_one_is_most_significant() {
        let s = StateVector::from_basis(l(3), &BasisState::parse("100").unwrap()).unwrap();
        assert_eq!(s.amplitudes[4], Complex64::new(1.0, 0.0));
        assert_eq!(BasisState::from_index(4, 3).bits, vec![1, 0, 0]);
    }

    #[test]
    fn local_gate_examples() {
        let one = StateVector::basis(l(1), 1).unwrap();
        assert_eq!(apply_local(&one, 0, &identity()).unwrap(), one);
        let out = apply_local(&one, 0, &phase(0.7)).unwrap();
        assert!((out.amplitudes[1] - Complex64::from_polar(1.0, 0.7)).norm() < 1e-15);
        let zero = StateVector::basis(l(1), 0).unwrap();
        let plus = apply_local(&zero, 0, &hadamard()).unwrap();
        assert!((plus.amplitudes[0].re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((plus.amplitudes[1].re - FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn local_gate_rejects_non_unitary() {
        let s = StateVector::zero(l(1)).unwrap();
        let bad = identity() * Complex64::new(2.0, 0.0);
        assert!(matches!(apply_local(&s, 0, &bad), Err(CoreError::InvalidArgument(_))));
    }

    #[test]
    fn swap_examples() {
        let s = StateVector::from_basis(l(2), &BasisState::parse("01").unwrap()).unwrap();
        let t = swap_qubits(&s, 0, 1).unwrap();
        assert_eq!(t.amplitude("10").unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(swap_qubits(&t, 0, 1).unwrap(), s);
        assert!(swap_qubits(&s, 1, 1).is_err());
    }

    #[test]
    fn fidelity_examples() {
        let a = StateVector::basis(l(2), 1).unwrap();
        let b = StateVector::basis(l(2), 2).unwrap();
        assert_eq!(fidelity_up_to_global_phase(&a, &a).unwrap(), 1.0);
        assert_eq!(fidelity_up_to_global_phase(&a, &b).unwrap(), 0.0);
        let c = a.scaled(Complex64::from_polar(1.0, 1.3));
        assert!((fidelity_up_to_global_phase(&a, &c).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn logical_projection_round_trip() {
        let layout = Layout::new(2, 1, 0).unwrap();
        let amps = vec![
            Complex64::new(0.5, 0.0),
            Complex64::new(0.0, 0.5),
            Complex64::new(-0.5, 0.0),
            Complex64::new(0.5, 0.0),
        ];
        let s = StateVector::embed_logical(layout, &[2, 0], &amps).unwrap();
        assert_eq!(s.project_logical(&[2, 0]).unwrap(), amps);
        // logical |01>: position 2 holds 0, position 0 holds 1 -> physical "100"
        assert_eq!(s.amplitude("100").unwrap(), amps[1]);
    }

    #[test]
    fn rejects_unnormalised_amplitudes() {
        let r = StateVector::from_amplitudes(l(1), vec![Complex64::new(1.0, 0.0); 2]);
        assert!(r.is_err());
    }
}
