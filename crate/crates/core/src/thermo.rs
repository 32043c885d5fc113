//! Entropy-change decomposition and heat bookkeeping.
//!
//! The system entropy change splits exactly, on the true global state, into
//! ```text
//! δS_S(n) = [I_SE(n) − I_SE(0)] + S(ρ_E(n)‖ρ_E(0)) + Tr[(ρ_E(n) − ρ_E(0)) ln ρ_E(0)]
//!            \___ s_corr ____/   \____ s_env ____/   \_______ q_term _________/
//! ```
//! `ρ_E(0)` is a product of identical ancilla states, so `ln ρ_E(0)` is a sum of
//! single-ancilla logarithms and only ancilla marginals enter the cross terms.
//! A pure ancilla state makes that logarithm singular; it is then mixed with
//! `REGULARIZATION · 𝟙/2` and the decomposition is flagged. The sum
//! `s_env + q_term = S_E(0) − S_E(n)` does not depend on the regularization.

use nalgebra::DMatrix;

use crate::diagnostics::StatePair;
use crate::engine::{
    evolve, propagator, AncillaInit, ErasurePropagator, ModelConfig, Propagator, SchemeId,
    Trajectory,
};
use crate::qcore::{
    collision_unitary, log_hermitian, von_neumann_entropy, DensityOperator, Label, LabeledRegister,
    QubitHamiltonianParams, C64,
};
use crate::{Error, Result};

/// Weight of `𝟙/2` mixed into a singular ancilla state before taking its log.
pub const REGULARIZATION: f64 = 1e-12;

/// Which global state the decomposition is evaluated on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecompositionSource {
    /// Every ancilla retained; the decomposition is exact.
    FullChain,
    /// The system cycling through only two ancillas, never traced.
    TwoAncillaToy,
    /// The erasure-B register standing in for the environment.
    EraseB,
    /// The erasure-C register standing in for the environment.
    EraseC,
}

impl DecompositionSource {
    pub fn name(self) -> &'static str {
        match self {
            DecompositionSource::FullChain => "full-chain",
            DecompositionSource::TwoAncillaToy => "two-ancilla-toy",
            DecompositionSource::EraseB => "erase-b",
            DecompositionSource::EraseC => "erase-c",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        [
            DecompositionSource::FullChain,
            DecompositionSource::TwoAncillaToy,
            DecompositionSource::EraseB,
            DecompositionSource::EraseC,
        ]
        .into_iter()
        .find(|s| s.name() == name)
    }
}

/// Terms of the entropy-change decomposition at one step (nats).
#[derive(Clone, Debug, PartialEq)]
pub struct EntropyDecomposition {
    pub step: usize,
    pub delta_s_system: f64,
    pub s_corr: f64,
    pub s_env: f64,
    pub q_term: f64,
    /// `S_E(0) − S_E(n)`, always well defined.
    pub minus_delta_s_env: f64,
    /// `−β(⟨Ĥ_E⟩_n − ⟨Ĥ_E⟩_0)` when the ancillas start thermal.
    pub q_gibbs: Option<f64>,
    /// Set when the ancilla state had to be regularized for `s_env`/`q_term`.
    pub regularized: bool,
}

impl EntropyDecomposition {
    pub fn decomposition_sum(&self) -> f64 {
        self.s_corr + self.s_env + self.q_term
    }

    /// `δS_S − (s_corr + s_env + q_term)`.
    pub fn residual(&self) -> f64 {
        self.delta_s_system - self.decomposition_sum()
    }
}

/// Reference data fixed by the initial product state.
struct Reference {
    h: QubitHamiltonianParams,
    ancilla0: DensityOperator,
    log_ancilla0: DMatrix<C64>,
    s_ancilla0: f64,
    cross_ancilla0: f64,
    s_system0: f64,
    beta: Option<f64>,
    regularized: bool,
}

impl Reference {
    fn new(cfg: &ModelConfig) -> Result<Self> {
        let ancilla0 = cfg.ancilla_state();
        let regularized = ancilla0.eigenvalues()[0] < REGULARIZATION;
        let sigma = if regularized {
            ancilla0.mixed_with_identity(REGULARIZATION)
        } else {
            ancilla0.clone()
        };
        let log_ancilla0 = log_hermitian(sigma.matrix())?;
        let cross_ancilla0 = ancilla0.expectation(&log_ancilla0)?.re;
        Ok(Self {
            h: cfg.hamiltonian(),
            s_ancilla0: von_neumann_entropy(&ancilla0),
            ancilla0,
            log_ancilla0,
            cross_ancilla0,
            s_system0: von_neumann_entropy(&cfg.system_init),
            beta: cfg.ancilla_init.gibbs_beta(),
            regularized,
        })
    }

    fn decompose(&self, step: usize, reg: &LabeledRegister) -> Result<EntropyDecomposition> {
        let env: Vec<Label> = reg
            .labels()
            .iter()
            .copied()
            .filter(|&l| l != Label::System)
            .collect();
        let s_system = von_neumann_entropy(&reg.marginal(Label::System)?);
        if env.is_empty() {
            return Ok(EntropyDecomposition {
                step,
                delta_s_system: s_system - self.s_system0,
                s_corr: 0.0,
                s_env: 0.0,
                q_term: 0.0,
                minus_delta_s_env: 0.0,
                q_gibbs: self.beta.map(|_| 0.0),
                regularized: self.regularized,
            });
        }
        let s_env_now = von_neumann_entropy(reg.partial_trace(&env)?.state());
        let s_joint = von_neumann_entropy(reg.state());
        let k = env.len() as f64;

        let mut cross = 0.0;
        let mut energy_change = 0.0;
        for &label in &env {
            let marginal = reg.marginal(label)?;
            cross += marginal.expectation(&self.log_ancilla0)?.re;
            energy_change += self.h.energy(&marginal) - self.h.energy(&self.ancilla0);
        }
        let s_env0 = k * self.s_ancilla0;
        let cross0 = k * self.cross_ancilla0;

        // The initial state is a product, so I_SE(0) = 0.
        let s_corr = s_system + s_env_now - s_joint;
        let s_env = (-s_env_now - cross) - (-s_env0 - cross0);
        let q_term = cross - cross0;
        Ok(EntropyDecomposition {
            step,
            delta_s_system: s_system - self.s_system0,
            s_corr,
            s_env,
            q_term,
            minus_delta_s_env: s_env0 - s_env_now,
            q_gibbs: self.beta.map(|b| -b * energy_change),
            regularized: self.regularized,
        })
    }
}

/// Global-state register after each step of the chosen source.
fn source_registers(
    cfg: &ModelConfig,
    source: DecompositionSource,
) -> Result<Vec<LabeledRegister>> {
    cfg.validate()?;
    let mut out = Vec::with_capacity(cfg.steps + 1);
    match source {
        DecompositionSource::TwoAncillaToy => {
            let fresh = cfg.ancilla_state();
            let mut reg = LabeledRegister::product(
                &[
                    (Label::System, cfg.system_init.clone()),
                    (Label::Ancilla(1), fresh.clone()),
                    (Label::Ancilla(2), fresh),
                ],
                cfg.max_qubits,
            )?;
            let sa = collision_unitary(&cfg.sa_coupling, cfg.tau_sa)?;
            let aa = collision_unitary(&cfg.aa_coupling, cfg.tau_aa)?;
            out.push(reg.clone());
            for n in 1..=cfg.steps {
                let current = Label::Ancilla(2 - n % 2);
                let other = Label::Ancilla(1 + n % 2);
                if n > 1 {
                    reg = reg.apply_on(&[other, current], &aa)?;
                }
                reg = reg.apply_on(&[Label::System, current], &sa)?;
                out.push(reg.clone());
            }
        }
        DecompositionSource::FullChain
        | DecompositionSource::EraseB
        | DecompositionSource::EraseC => {
            let mut p: Box<dyn Propagator> = match source {
                DecompositionSource::FullChain => propagator(cfg, SchemeId::FullChain)?,
                DecompositionSource::EraseB => {
                    Box::new(ErasurePropagator::new(cfg, SchemeId::EraseB)?)
                }
                _ => Box::new(ErasurePropagator::new(cfg, SchemeId::EraseC)?),
            };
            out.push(p.register().clone());
            for _ in 0..cfg.steps {
                p.advance()?;
                out.push(p.register().clone());
            }
        }
    }
    Ok(out)
}

/// Decomposition at every step `0..=cfg.steps`.
pub fn entropy_decomposition_series(
    cfg: &ModelConfig,
    source: DecompositionSource,
) -> Result<Vec<EntropyDecomposition>> {
    let reference = Reference::new(cfg)?;
    source_registers(cfg, source)?
        .iter()
        .enumerate()
        .map(|(step, reg)| reference.decompose(step, reg))
        .collect()
}

/// Decomposition at step `n`.
pub fn entropy_decomposition(
    cfg: &ModelConfig,
    n: usize,
    source: DecompositionSource,
) -> Result<EntropyDecomposition> {
    let series = entropy_decomposition_series(&cfg.clone().with_steps(n), source)?;
    Ok(series.into_iter().last().expect("series includes step 0"))
}

/// Heat given off by the system and by the environment up to step `n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HeatRecord {
    pub step: usize,
    /// `Tr[Ĥ_S(ρ_S(0) − ρ_S(n))]`.
    pub q_system: f64,
    /// `Σ_k Tr[Ĥ_E(ρ_{E_k} − ρ̃_{E_k})]` over the ancillas that met the system.
    pub q_environment: f64,
}

/// Heat series of a trajectory; each ancilla is bracketed by its states just
/// before and after its collision with the system.
pub fn heat_from_trajectory(cfg: &ModelConfig, traj: &Trajectory) -> Vec<HeatRecord> {
    let h = cfg.hamiltonian();
    let e0 = h.energy(&cfg.system_init);
    let mut q_env = 0.0;
    traj.records
        .iter()
        .map(|r| {
            q_env += r
                .exchanges
                .iter()
                .map(|ex| h.energy(&ex.before) - h.energy(&ex.after))
                .sum::<f64>();
            HeatRecord {
                step: r.step,
                q_system: e0 - h.energy(&r.system),
                q_environment: q_env,
            }
        })
        .collect()
}

pub fn heat_series(cfg: &ModelConfig, scheme: SchemeId) -> Result<Vec<HeatRecord>> {
    Ok(heat_from_trajectory(cfg, &evolve(cfg, scheme)?))
}

/// Sign agreement between the per-step changes of the system heat and of the
/// trace distance.
#[derive(Clone, Debug, PartialEq)]
pub struct FluxAlignment {
    /// `ΔQ_S(n)` for `n = 1..=steps`, with heat taken for the pair's first member.
    pub heat_flux: Vec<f64>,
    /// `Δ𝒟(n)` for `n = 1..=steps`.
    pub distance_flux: Vec<f64>,
    /// The fixed sign `s` maximizing agreement `sign(ΔQ_S) = s·sign(Δ𝒟)`.
    pub sign: i8,
    /// Steps where both changes exceed [`FLUX_THRESHOLD`] in magnitude.
    pub counted_steps: usize,
    pub agreeing_steps: usize,
    /// `None` when no step qualifies.
    pub agreement_fraction: Option<f64>,
    /// Both series identically zero (e.g. a pair of steady states).
    pub degenerate: bool,
}

pub const FLUX_THRESHOLD: f64 = 1e-10;

/// Alignment of heat flux and trace-distance flux for an energy-preserving
/// system-ancilla coupling and thermal ancillas.
pub fn flux_alignment(cfg: &ModelConfig, pair: &StatePair) -> Result<FluxAlignment> {
    if !cfg.sa_coupling.is_isotropic() {
        return Err(Error::Unsupported(
            "flux alignment needs an isotropic system-ancilla coupling".into(),
        ));
    }
    if !matches!(cfg.ancilla_init, AncillaInit::Gibbs { .. }) {
        return Err(Error::Unsupported(
            "flux alignment needs thermal ancillas".into(),
        ));
    }
    let scheme = SchemeId::exact_for_depth(cfg.depth);
    let first_cfg = cfg.clone().with_system(pair.first.clone());
    let first = evolve(&first_cfg, scheme)?;
    let second = evolve(&cfg.clone().with_system(pair.second.clone()), scheme)?;
    let heat: Vec<f64> = heat_from_trajectory(&first_cfg, &first)
        .iter()
        .map(|r| r.q_system)
        .collect();
    let distance = first.deviation_series(&second)?;
    let diff = |s: &[f64]| s.windows(2).map(|w| w[1] - w[0]).collect::<Vec<f64>>();
    let heat_flux = diff(&heat);
    let distance_flux = diff(&distance);

    let counted: Vec<(f64, f64)> = heat_flux
        .iter()
        .zip(&distance_flux)
        .filter(|(q, d)| q.abs() > FLUX_THRESHOLD && d.abs() > FLUX_THRESHOLD)
        .map(|(&q, &d)| (q, d))
        .collect();
    let same = counted
        .iter()
        .filter(|(q, d)| q.signum() == d.signum())
        .count();
    let (sign, agreeing_steps) = if same * 2 >= counted.len() {
        (1, same)
    } else {
        (-1, counted.len() - same)
    };
    let degenerate = heat_flux
        .iter()
        .chain(&distance_flux)
        .all(|x| x.abs() <= FLUX_THRESHOLD);
    Ok(FluxAlignment {
        sign,
        counted_steps: counted.len(),
        agreeing_steps,
        agreement_fraction: (!counted.is_empty())
            .then(|| agreeing_steps as f64 / counted.len() as f64),
        degenerate,
        heat_flux,
        distance_flux,
    })
}
