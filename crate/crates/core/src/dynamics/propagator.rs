use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::chain::CouplingProfile;
use crate::error::{invalid, CoreError, Result};
use crate::parallel::Parallelism;

use super::state::{core_bits, reverse_bits, StateVector};

/// Chains longer than this are not diagonalised (largest block C(12,6) = 924).
pub const MAX_PROPAGATOR_SITES: usize = 12;

/// One fixed-excitation sector of the chain Hamiltonian.
#[derive(Debug, Clone)]
struct Sector {
    /// Core configurations (site 1 = MSB) spanning the sector, ascending.
    states: Vec<usize>,
    energies: Vec<f64>,
    vectors: DMatrix<f64>,
}

/// Eigendecomposition of the chain Hamiltonian, one block per Hamming weight.
///
/// `H` conserves the number of up spins, so every weight sector is an
/// independent real symmetric block.
#[derive(Debug, Clone)]
pub struct SectorDecomposition {
    n_sites: usize,
    sectors: Vec<Sector>,
}

/// Hamiltonian matrix of one weight sector.
///
/// Couplings enter with hopping amplitude `-w_j`, so for `w_j > 0` the lowest
/// single-excitation mode is mirror-even and a valid certificate's `phi_N` is
/// exactly the phase acquired per excitation. Flipping the hopping sign is a
/// staggered `Z` gauge and leaves every spectrum unchanged.
pub fn sector_hamiltonian(profile: &CouplingProfile, states: &[usize]) -> DMatrix<f64> {
    let n = profile.n_sites;
    let d = states.len();
    let mut h = DMatrix::zeros(d, d);
    let position = |s: usize| states.binary_search(&s).expect("hop leaves sector");
    for (i, &s) in states.iter().enumerate() {
        for q in 0..n {
            if (s >> (n - 1 - q)) & 1 == 1 {
                h[(i, i)] += profile.lambdas[q];
            }
        }
        for q in 0..n.saturating_sub(1) {
            let (m1, m2) = (1usize << (n - 1 - q), 1usize << (n - 2 - q));
            if ((s & m1) != 0) != ((s & m2) != 0) {
                let j = position(s ^ m1 ^ m2);
                h[(i, j)] -= profile.omegas[q];
            }
        }
    }
    h
}

impl SectorDecomposition {
    pub fn new(profile: &CouplingProfile) -> Result<Self> {
        Self::with_parallelism(profile, Parallelism::default())
    }

    pub fn with_parallelism(profile: &CouplingProfile, mode: Parallelism) -> Result<Self> {
        profile.ensure_shape()?;
        let n = profile.n_sites;
        if n > MAX_PROPAGATOR_SITES {
            return Err(CoreError::SizeLimit {
                what: "chain sites",
                value: n,
                max: MAX_PROPAGATOR_SITES,
            });
        }
        let mut by_weight: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
        for s in 0..(1usize << n) {
            by_weight[s.count_ones() as usize].push(s);
        }
        let sectors = mode.map(&by_weight, |states| {
            let h = sector_hamiltonian(profile, states);
            let eig = SymmetricEigen::new(h);
            Sector {
                states: states.clone(),
                energies: eig.eigenvalues.iter().cloned().collect(),
                vectors: eig.eigenvectors,
            }
        });
        Ok(SectorDecomposition {
            n_sites: n,
            sectors,
        })
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    /// `exp(-i H t)` restricted to each sector.
    pub fn propagator(&self, t: f64) -> Result<BlockPropagator> {
        self.propagator_with(t, Parallelism::default())
    }

    pub fn propagator_with(&self, t: f64, mode: Parallelism) -> Result<BlockPropagator> {
        if !t.is_finite() {
            return invalid(format!("evolution time must be finite, got {t}"));
        }
        let blocks = mode.map(&self.sectors, |sec| {
            let v = sec.vectors.map(|x| Complex64::new(x, 0.0));
            let mut phased = v.clone();
            for (k, e) in sec.energies.iter().enumerate() {
                let ph = Complex64::from_polar(1.0, -e * t);
                phased.column_mut(k).iter_mut().for_each(|z| *z *= ph);
            }
            &phased * v.transpose()
        });
        Ok(BlockPropagator {
            n_sites: self.n_sites,
            t,
            blocks,
            sectors: self.sectors.iter().map(|s| s.states.clone()).collect(),
        })
    }
}

/// `exp(-i H t)` stored as one dense unitary per excitation sector.
#[derive(Debug, Clone)]
pub struct BlockPropagator {
    n_sites: usize,
    t: f64,
    blocks: Vec<DMatrix<Complex64>>,
    sectors: Vec<Vec<usize>>,
}

impl BlockPropagator {
    pub fn time(&self) -> f64 {
        self.t
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    /// Applies the propagator to the core register; ancilla and store idle.
    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        if state.layout.core_sites != self.n_sites {
            return invalid(format!(
                "state core has {} sites, propagator has {}",
                state.layout.core_sites, self.n_sites
            ));
        }
        let rest = state.layout.ancilla_count + state.layout.store_sites;
        let n_rest = 1usize << rest;
        let mut out = vec![Complex64::new(0.0, 0.0); state.amplitudes.len()];
        for (block, states) in self.blocks.iter().zip(&self.sectors) {
            let d = states.len();
            let mut v = vec![Complex64::new(0.0, 0.0); d];
            for r in 0..n_rest {
                let mut any = false;
                for (k, &s) in states.iter().enumerate() {
                    v[k] = state.amplitudes[(s << rest) | r];
                    any |= v[k] != Complex64::new(0.0, 0.0);
                }
                if !any {
                    continue;
                }
                for (i, &s) in states.iter().enumerate() {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (k, vk) in v.iter().enumerate() {
                        acc += block[(i, k)] * vk;
                    }
                    out[(s << rest) | r] = acc;
                }
            }
        }
        Ok(StateVector {
            layout: state.layout,
            amplitudes: out,
        })
    }

    /// Dense `2^N x 2^N` matrix assembled from the sector blocks.
    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let dim = 1usize << self.n_sites;
        let mut m = DMatrix::zeros(dim, dim);
        for (block, states) in self.blocks.iter().zip(&self.sectors) {
            for (i, &si) in states.iter().enumerate() {
                for (j, &sj) in states.iter().enumerate() {
                    m[(si, sj)] = block[(i, j)];
                }
            }
        }
        m
    }
}

/// Dense propagator over the chain sites only.
#[derive(Debug, Clone)]
pub struct Propagator {
    pub t: f64,
    pub matrix: DMatrix<Complex64>,
}

/// Applies `exp(-i H t)` to the core register of `state`.
pub fn evolve(profile: &CouplingProfile, state: &StateVector, t: f64) -> Result<StateVector> {
    if state.layout.core_sites != profile.n_sites {
        return invalid(format!(
            "layout core has {} sites but profile has {}",
            state.layout.core_sites, profile.n_sites
        ));
    }
    SectorDecomposition::new(profile)?.propagator(t)?.apply(state)
}

pub fn full_propagator(profile: &CouplingProfile, t: f64) -> Result<Propagator> {
    let u = SectorDecomposition::new(profile)?.propagator(t)?;
    Ok(Propagator {
        t,
        matrix: u.to_dense(),
    })
}

/// Closed-form mirror evolution: each core configuration `|s>` of weight `n`
/// goes to `exp(-i n phi_N) (-1)^{floor(n/2)} |reverse(s)>`.
pub fn mirror_map(state: &StateVector, phi_n: f64) -> StateVector {
    let layout = state.layout;
    let n = layout.core_sites;
    let rest = layout.ancilla_count + layout.store_sites;
    let mut out = vec![Complex64::new(0.0, 0.0); state.amplitudes.len()];
    for (i, a) in state.amplitudes.iter().enumerate() {
        if *a == Complex64::new(0.0, 0.0) {
            continue;
        }
        let (core, r) = core_bits(i, &layout);
        out[(reverse_bits(core, n) << rest) | r] = a * mirror_phase(core.count_ones() as usize, phi_n);
    }
    StateVector {
        layout,
        amplitudes: out,
    }
}

/// Phase acquired by a weight-`n` configuration under one mirror period.
pub fn mirror_phase(n: usize, phi_n: f64) -> Complex64 {
    let sign = if (n / 2) % 2 == 0 { 1.0 } else { -1.0 };
    Complex64::from_polar(sign, -(n as f64) * phi_n)
}
