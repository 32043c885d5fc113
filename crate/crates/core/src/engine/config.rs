use crate::qcore::{
    gibbs_qubit, CouplingTriple, DensityOperator, QubitHamiltonianParams, DEFAULT_MAX_QUBITS,
};
use crate::{Error, Result};

/// Initial state shared by every ancilla.
#[derive(Clone, Debug, PartialEq)]
pub enum AncillaInit {
    /// `|0⟩`, the ground state of `−ω₀σz`.
    Ground,
    /// `|1⟩`.
    Excited,
    Gibbs {
        beta: f64,
    },
    Explicit(DensityOperator),
}

impl AncillaInit {
    pub fn state(&self, h: &QubitHamiltonianParams) -> DensityOperator {
        match self {
            AncillaInit::Ground => DensityOperator::zero(),
            AncillaInit::Excited => DensityOperator::one(),
            AncillaInit::Gibbs { beta } => gibbs_qubit(*beta, h),
            AncillaInit::Explicit(rho) => rho.clone(),
        }
    }

    pub fn gibbs_beta(&self) -> Option<f64> {
        match self {
            AncillaInit::Gibbs { beta } => Some(*beta),
            _ => None,
        }
    }
}

/// Order in which the pairwise ancilla-ancilla collisions of a step are applied.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum AaOrdering {
    /// `(l, m)` ascending with `l < m`.
    #[default]
    Lexicographic,
    ReverseLexicographic,
}

/// Which representation of the collision dynamics to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SchemeId {
    FullChain,
    EraseA,
    EraseB,
    EraseC,
    Embedded,
}

impl SchemeId {
    pub const ALL: [SchemeId; 5] = [
        SchemeId::FullChain,
        SchemeId::EraseA,
        SchemeId::EraseB,
        SchemeId::EraseC,
        SchemeId::Embedded,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SchemeId::FullChain => "full-chain",
            SchemeId::EraseA => "erase-a",
            SchemeId::EraseB => "erase-b",
            SchemeId::EraseC => "erase-c",
            SchemeId::Embedded => "embedded",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.name() == name)
    }

    /// The cheapest representation that is exact for memory depth `depth`.
    pub fn exact_for_depth(depth: usize) -> Self {
        if depth == 1 {
            SchemeId::EraseB
        } else {
            SchemeId::Embedded
        }
    }
}

/// Physical parameters of a collision-model run.
///
/// `tau_sa` and `tau_aa` multiply the couplings, so with unit couplings they
/// are the collision angles `Jτ`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelConfig {
    pub sa_coupling: CouplingTriple,
    pub aa_coupling: CouplingTriple,
    pub tau_sa: f64,
    pub tau_aa: f64,
    /// Range of ancilla-ancilla collisions, `d ≥ 1`.
    pub depth: usize,
    pub steps: usize,
    pub omega0: f64,
    pub ancilla_init: AncillaInit,
    pub system_init: DensityOperator,
    pub aa_ordering: AaOrdering,
    pub max_qubits: usize,
}

impl Default for ModelConfig {
    fn default() -> Self {
        Self {
            sa_coupling: CouplingTriple::isotropic(1.0),
            aa_coupling: CouplingTriple::isotropic(1.0),
            tau_sa: 0.0,
            tau_aa: 0.0,
            depth: 1,
            steps: 1,
            omega0: 1.0,
            ancilla_init: AncillaInit::Ground,
            system_init: DensityOperator::zero(),
            aa_ordering: AaOrdering::Lexicographic,
            max_qubits: DEFAULT_MAX_QUBITS,
        }
    }
}

impl ModelConfig {
    pub fn with_system(mut self, rho: DensityOperator) -> Self {
        self.system_init = rho;
        self
    }

    pub fn with_steps(mut self, steps: usize) -> Self {
        self.steps = steps;
        self
    }

    pub fn hamiltonian(&self) -> QubitHamiltonianParams {
        QubitHamiltonianParams {
            omega0: self.omega0,
        }
    }

    pub fn ancilla_state(&self) -> DensityOperator {
        self.ancilla_init.state(&self.hamiltonian())
    }

    pub fn validate(&self) -> Result<()> {
        for (name, tau) in [("tau_sa", self.tau_sa), ("tau_aa", self.tau_aa)] {
            if !(tau.is_finite() && tau >= 0.0) {
                return Err(Error::Argument(format!(
                    "{name} = {tau} must be finite and ≥ 0"
                )));
            }
        }
        CouplingTriple::new(
            self.sa_coupling.jx,
            self.sa_coupling.jy,
            self.sa_coupling.jz,
        )?;
        CouplingTriple::new(
            self.aa_coupling.jx,
            self.aa_coupling.jy,
            self.aa_coupling.jz,
        )?;
        if self.depth == 0 {
            return Err(Error::Argument("memory depth must be ≥ 1".into()));
        }
        if !self.omega0.is_finite() {
            return Err(Error::Argument("omega0 must be finite".into()));
        }
        if self.system_init.dim() != 2 {
            return Err(Error::Argument("system_init must be a qubit state".into()));
        }
        self.system_init.check()?;
        if let AncillaInit::Gibbs { beta } = self.ancilla_init {
            if !(beta.is_finite() && beta >= 0.0) {
                return Err(Error::Argument(format!(
                    "Gibbs beta {beta} must be finite and ≥ 0"
                )));
            }
        }
        let anc = self.ancilla_state();
        if anc.dim() != 2 {
            return Err(Error::Argument("ancilla_init must be a qubit state".into()));
        }
        anc.check()?;
        if self.max_qubits == 0 {
            return Err(Error::Argument("max_qubits must be ≥ 1".into()));
        }
        Ok(())
    }
}
