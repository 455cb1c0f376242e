use std::collections::BTreeMap;
use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::chain::{mirror_certificate, CouplingProfile, MirrorCertificate};
use crate::dynamics::{apply_local_unchecked, swap_qubits, BlockPropagator, Layout, SectorDecomposition, StateVector};
use crate::error::{invalid, CoreError, Result};
use crate::linalg::{is_unitary2, mat2_serde, Mat2};
use crate::parallel::Parallelism;

/// One primitive of the processor-core instruction set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum GateInstruction {
    /// Free evolution of the chain for `tau`.
    #[serde(rename = "evolve")]
    FreeEvolve { tau: f64 },
    /// Exchange of two qubits (a chain site and an ancilla or store site).
    Swap { a: usize, b: usize },
    Local {
        qubit: usize,
        label: String,
        #[serde(with = "mat2_serde")]
        matrix: Mat2,
    },
}

/// Instruction counts of a program.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub free_evolutions: usize,
    pub swaps: usize,
    pub locals: usize,
}

/// An ordered instruction list; the first instruction acts first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateProgram {
    pub layout: Layout,
    pub instructions: Vec<GateInstruction>,
    /// Free-form annotations such as site roles.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metadata: BTreeMap<String, String>,
}

impl GateProgram {
    pub fn new(layout: Layout) -> Self {
        GateProgram {
            layout,
            instructions: Vec::new(),
            metadata: BTreeMap::new(),
        }
    }

    pub fn with_metadata(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.metadata.insert(key.into(), value.into());
        self
    }

    pub fn census(&self) -> Census {
        let mut c = Census::default();
        for ins in &self.instructions {
            match ins {
                GateInstruction::FreeEvolve { .. } => c.free_evolutions += 1,
                GateInstruction::Swap { .. } => c.swaps += 1,
                GateInstruction::Local { .. } => c.locals += 1,
            }
        }
        c
    }

    /// Appends `other` (same layout) after this program.
    pub fn then(mut self, other: &GateProgram) -> Result<Self> {
        if other.layout != self.layout {
            return Err(CoreError::InvalidLayout("cannot concatenate programs on different layouts".into()));
        }
        self.instructions.extend(other.instructions.iter().cloned());
        self.metadata
            .extend(other.metadata.iter().map(|(k, v)| (k.clone(), v.clone())));
        Ok(self)
    }

    /// Checks qubit indices, swap distinctness and local unitarity.
    pub fn check(&self) -> Result<()> {
        self.layout.check()?;
        let m = self.layout.total_qubits();
        for (k, ins) in self.instructions.iter().enumerate() {
            match ins {
                GateInstruction::FreeEvolve { tau } if !tau.is_finite() => {
                    return invalid(format!("instruction {k}: non-finite evolution time"))
                }
                GateInstruction::Swap { a, b } if a == b || *a >= m || *b >= m => {
                    return invalid(format!("instruction {k}: bad swap ({a}, {b})"))
                }
                GateInstruction::Local { qubit, matrix, .. } => {
                    if *qubit >= m {
                        return invalid(format!("instruction {k}: qubit {qubit} out of range"));
                    }
                    if !is_unitary2(matrix) {
                        return invalid(format!("instruction {k}: local gate is not unitary"));
                    }
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Physical position of every qubit's content after the program, indexed
    /// by its starting position. A free evolution mirrors the chain sites.
    pub fn final_locations(&self) -> Vec<usize> {
        let mut tracker = LocationTracker::new(self.layout);
        for ins in &self.instructions {
            tracker.apply(ins);
        }
        tracker.loc
    }
}

#[derive(Debug, Clone)]
struct LocationTracker {
    core: usize,
    /// physical -> logical
    holder: Vec<usize>,
    /// logical -> physical
    loc: Vec<usize>,
}

impl LocationTracker {
    fn new(layout: Layout) -> Self {
        let m = layout.total_qubits();
        LocationTracker {
            core: layout.core_sites,
            holder: (0..m).collect(),
            loc: (0..m).collect(),
        }
    }

    fn apply(&mut self, ins: &GateInstruction) {
        match ins {
            GateInstruction::FreeEvolve { .. } => self.holder[..self.core].reverse(),
            GateInstruction::Swap { a, b } => self.holder.swap(*a, *b),
            GateInstruction::Local { .. } => return,
        }
        for (p, &q) in self.holder.iter().enumerate() {
            self.loc[q] = p;
        }
    }
}

/// Incremental program construction that keeps track of where each qubit
/// currently lives, so local gates can be addressed by logical qubit.
#[derive(Debug, Clone)]
pub struct ProgramBuilder {
    layout: Layout,
    tau: f64,
    tracker: LocationTracker,
    instructions: Vec<GateInstruction>,
}

impl ProgramBuilder {
    pub fn new(layout: Layout, tau: f64) -> Self {
        ProgramBuilder {
            layout,
            tau,
            tracker: LocationTracker::new(layout),
            instructions: Vec::new(),
        }
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    fn push(&mut self, ins: GateInstruction) {
        self.tracker.apply(&ins);
        self.instructions.push(ins);
    }

    pub fn evolve(&mut self) -> &mut Self {
        self.push(GateInstruction::FreeEvolve { tau: self.tau });
        self
    }

    pub fn swap(&mut self, a: usize, b: usize) -> &mut Self {
        self.push(GateInstruction::Swap { a, b });
        self
    }

    /// Local gate on a physical qubit.
    pub fn local_at(&mut self, qubit: usize, matrix: Mat2, label: impl Into<String>) -> &mut Self {
        self.push(GateInstruction::Local {
            qubit,
            label: label.into(),
            matrix,
        });
        self
    }

    /// Local gate on wherever logical qubit `logical` currently sits.
    pub fn local_on(&mut self, logical: usize, matrix: Mat2, label: impl Into<String>) -> &mut Self {
        let q = self.location(logical);
        self.local_at(q, matrix, label)
    }

    pub fn extend(&mut self, instructions: impl IntoIterator<Item = GateInstruction>) -> &mut Self {
        for ins in instructions {
            self.push(ins);
        }
        self
    }

    pub fn location(&self, logical: usize) -> usize {
        self.tracker.loc[logical]
    }

    pub fn locations(&self) -> &[usize] {
        &self.tracker.loc
    }

    pub fn finish(self) -> GateProgram {
        GateProgram {
            layout: self.layout,
            instructions: self.instructions,
            metadata: BTreeMap::new(),
        }
    }
}

/// A certified mirror-inverting chain together with its period.
///
/// Program builders read `tau` and `phi_N` from here, and execution reuses the
/// cached sector propagator for the period.
#[derive(Debug, Clone)]
pub struct ProcessorCore {
    profile: CouplingProfile,
    certificate: MirrorCertificate,
    decomposition: SectorDecomposition,
    period: BlockPropagator,
}

impl ProcessorCore {
    pub fn new(profile: CouplingProfile, tau: f64) -> Result<Self> {
        let diag = profile.validate();
        if !diag.is_valid() {
            return Err(CoreError::Precondition(format!("profile is not a valid mirror-symmetric chain: {diag:?}")));
        }
        let certificate = mirror_certificate(&profile, tau)?;
        if !certificate.is_valid() {
            return Err(CoreError::Precondition(format!(
                "no mirror inversion at tau = {tau}: deviation {:e}",
                certificate.max_deviation
            )));
        }
        let decomposition = SectorDecomposition::new(&profile)?;
        let period = decomposition.propagator(tau)?;
        Ok(ProcessorCore {
            profile,
            certificate,
            decomposition,
            period,
        })
    }

    /// Linear-spectrum chain of `n` sites, period `pi`, `phi_N = 0`.
    pub fn christandl(n: usize) -> Result<Self> {
        Self::new(CouplingProfile::christandl(n)?, PI)
    }

    /// Single isolated site with zero field; only useful for one-qubit programs.
    pub fn trivial() -> Self {
        Self::new(CouplingProfile::new(Vec::new(), vec![0.0]).expect("one site"), PI).expect("trivially certified")
    }

    pub fn profile(&self) -> &CouplingProfile {
        &self.profile
    }

    pub fn certificate(&self) -> &MirrorCertificate {
        &self.certificate
    }

    pub fn n_sites(&self) -> usize {
        self.profile.n_sites
    }

    pub fn tau(&self) -> f64 {
        self.certificate.tau
    }

    pub fn phi_n(&self) -> f64 {
        self.certificate.phi_n
    }

    pub fn builder(&self, layout: Layout) -> ProgramBuilder {
        ProgramBuilder::new(layout, self.tau())
    }

    pub(crate) fn check_layout(&self, layout: &Layout) -> Result<()> {
        layout.check()?;
        if layout.core_sites != self.n_sites() {
            return Err(CoreError::InvalidLayout(format!(
                "layout core has {} sites, chain has {}",
                layout.core_sites,
                self.n_sites()
            )));
        }
        Ok(())
    }

    pub fn execute(&self, program: &GateProgram, state: &StateVector) -> Result<StateVector> {
        self.check_layout(&program.layout)?;
        if state.layout != program.layout {
            return Err(CoreError::InvalidLayout("state and program layouts differ".into()));
        }
        program.check()?;
        let mut current = state.clone();
        for ins in &program.instructions {
            current = match ins {
                GateInstruction::FreeEvolve { tau } if *tau == self.tau() => self.period.apply(&current)?,
                GateInstruction::FreeEvolve { tau } => self.decomposition.propagator(*tau)?.apply(&current)?,
                GateInstruction::Swap { a, b } => swap_qubits(&current, *a, *b)?,
                GateInstruction::Local { qubit, matrix, .. } => apply_local_unchecked(&current, *qubit, matrix),
            };
        }
        Ok(current)
    }

    /// Matrix of the program on a logical register.
    ///
    /// Column `j` is obtained by preparing basis state `j` on the physical
    /// positions `logical` (all other qubits |0>), executing, and reading the
    /// amplitudes back at the final positions of those qubits. Leakage out of
    /// the |0> ancilla/store subspace shows up as a non-unitary result.
    pub fn logical_unitary(&self, program: &GateProgram, logical: &[usize]) -> Result<DMatrix<Complex64>> {
        self.logical_unitary_with(program, logical, Parallelism::default())
    }

    pub fn logical_unitary_with(
        &self,
        program: &GateProgram,
        logical: &[usize],
        mode: Parallelism,
    ) -> Result<DMatrix<Complex64>> {
        let finals = program.final_locations();
        let outputs: Vec<usize> = logical.iter().map(|&q| finals[q]).collect();
        self.transfer_matrix(program, logical, &outputs, mode)
    }

    /// Like [`ProcessorCore::logical_unitary`] but reads the outputs at the
    /// same physical positions the inputs were written to.
    pub fn register_unitary(&self, program: &GateProgram, positions: &[usize]) -> Result<DMatrix<Complex64>> {
        self.transfer_matrix(program, positions, positions, Parallelism::default())
    }

    fn transfer_matrix(
        &self,
        program: &GateProgram,
        inputs: &[usize],
        outputs: &[usize],
        mode: Parallelism,
    ) -> Result<DMatrix<Complex64>> {
        let dim = 1usize << inputs.len();
        let columns = mode.map_range(dim, |j| -> Result<Vec<Complex64>> {
            let mut amps = vec![Complex64::new(0.0, 0.0); dim];
            amps[j] = Complex64::new(1.0, 0.0);
            let input = StateVector::embed_logical(program.layout, inputs, &amps)?;
            self.execute(program, &input)?.project_logical(outputs)
        });
        let mut m = DMatrix::zeros(dim, dim);
        for (j, col) in columns.into_iter().enumerate() {
            for (i, z) in col?.into_iter().enumerate() {
                m[(i, j)] = z;
            }
        }
        Ok(m)
    }
}
