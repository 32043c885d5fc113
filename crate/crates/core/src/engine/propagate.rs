use super::config::{ModelConfig, SchemeId};
use super::schedule::{aa_pairs, step_collisions, Collision, CollisionKind, CollisionSet};
use crate::qcore::{trace_distance, DensityOperator, Label, LabeledRegister, UnitaryOperator};
use crate::{Error, Result};

/// State of one ancilla immediately before and after its collision with the
/// system.
#[derive(Clone, Debug, PartialEq)]
pub struct AncillaExchange {
    pub ancilla: usize,
    pub before: DensityOperator,
    pub after: DensityOperator,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StepRecord {
    pub step: usize,
    pub system: DensityOperator,
    /// Retained register at the end of the step, when requested.
    pub register: Option<LabeledRegister>,
    /// System-ancilla exchanges that happened during this step.
    pub exchanges: Vec<AncillaExchange>,
}

/// Per-step record of a run; index 0 is the initial state.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub scheme: SchemeId,
    pub records: Vec<StepRecord>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn system_states(&self) -> impl Iterator<Item = &DensityOperator> + '_ {
        self.records.iter().map(|r| &r.system)
    }

    /// Per-step trace distance between the two runs' system states, over the
    /// steps both runs cover.
    pub fn deviation_series(&self, other: &Trajectory) -> Result<Vec<f64>> {
        self.system_states()
            .zip(other.system_states())
            .map(|(a, b)| trace_distance(a, b))
            .collect()
    }

    pub fn max_deviation(&self, other: &Trajectory) -> Result<f64> {
        Ok(self
            .deviation_series(other)?
            .into_iter()
            .fold(0.0, f64::max))
    }
}

/// A representation of the dynamics that can be advanced one step at a time.
pub trait Propagator: Send {
    fn scheme(&self) -> SchemeId;

    fn steps_taken(&self) -> usize;

    /// The register currently retained by this representation.
    fn register(&self) -> &LabeledRegister;

    fn system_state(&self) -> Result<DensityOperator> {
        self.register().marginal(Label::System)
    }

    /// Runs the next step and returns its system-ancilla exchanges.
    fn advance(&mut self) -> Result<Vec<AncillaExchange>>;
}

fn collide_with_system(
    reg: &LabeledRegister,
    slot: Label,
    ancilla: usize,
    u: &UnitaryOperator,
) -> Result<(LabeledRegister, AncillaExchange)> {
    let before = reg.marginal(slot)?;
    let reg = reg.apply_on(&[Label::System, slot], u)?;
    let after = reg.marginal(slot)?;
    Ok((
        reg,
        AncillaExchange {
            ancilla,
            before,
            after,
        },
    ))
}

/// Every ancilla kept in one growing register: the exact reference dynamics.
pub struct FullChainPropagator {
    cfg: ModelConfig,
    set: CollisionSet,
    reg: LabeledRegister,
    fresh: DensityOperator,
    steps_taken: usize,
    highest: usize,
}

impl FullChainPropagator {
    pub fn new(cfg: &ModelConfig) -> Result<Self> {
        cfg.validate()?;
        let required = 1 + cfg.depth * cfg.steps;
        if required > cfg.max_qubits {
            return Err(Error::StepCapacity {
                requested: cfg.steps,
                required,
                max_qubits: cfg.max_qubits,
                max_steps: cfg.max_qubits.saturating_sub(1) / cfg.depth,
            });
        }
        Ok(Self {
            set: CollisionSet::new(cfg)?,
            reg: LabeledRegister::single(Label::System, cfg.system_init.clone())?,
            fresh: cfg.ancilla_state(),
            cfg: cfg.clone(),
            steps_taken: 0,
            highest: 0,
        })
    }

    fn ensure_ancilla(&mut self, k: usize) -> Result<()> {
        while self.highest < k {
            self.highest += 1;
            self.reg = self.reg.append(
                Label::Ancilla(self.highest),
                &self.fresh,
                self.cfg.max_qubits,
            )?;
        }
        Ok(())
    }

    /// Advances one step, calling `hook` on the register after each collision.
    pub fn advance_with(
        &mut self,
        mut hook: impl FnMut(&Collision, &mut LabeledRegister) -> Result<()>,
    ) -> Result<Vec<AncillaExchange>> {
        let n = self.steps_taken + 1;
        let mut exchanges = Vec::new();
        for collision in step_collisions(&self.set, &self.cfg, n) {
            for t in collision.targets {
                if let Label::Ancilla(k) = t {
                    self.ensure_ancilla(k)?;
                }
            }
            match collision.kind {
                CollisionKind::AncillaAncilla => {
                    self.reg = self.reg.apply_on(&collision.targets, &collision.unitary)?;
                }
                CollisionKind::SystemAncilla => {
                    let slot = collision.targets[1];
                    let Label::Ancilla(k) = slot else {
                        unreachable!()
                    };
                    let (reg, ex) = collide_with_system(&self.reg, slot, k, &collision.unitary)?;
                    self.reg = reg;
                    exchanges.push(ex);
                }
            }
            hook(&collision, &mut self.reg)?;
        }
        self.steps_taken = n;
        Ok(exchanges)
    }
}

impl Propagator for FullChainPropagator {
    fn scheme(&self) -> SchemeId {
        SchemeId::FullChain
    }

    fn steps_taken(&self) -> usize {
        self.steps_taken
    }

    fn register(&self) -> &LabeledRegister {
        &self.reg
    }

    fn advance(&mut self) -> Result<Vec<AncillaExchange>> {
        self.advance_with(|_, _| Ok(()))
    }
}

/// Nearest-neighbour dynamics with system-ancilla correlations erased at a
/// fixed point of each step.
///
/// - A: the system and `E_n` are decorrelated right after their collision,
///   before `E_n` meets `E_{n+1}`; at most two qubits are held.
/// - B: `E_n` is traced out after its collision with `E_{n+1}` and before the
///   system meets `E_{n+1}`; three qubits.
/// - C: that trace is postponed by one step; four qubits.
pub struct ErasurePropagator {
    scheme: SchemeId,
    cfg: ModelConfig,
    set: CollisionSet,
    reg: LabeledRegister,
    fresh: DensityOperator,
    steps_taken: usize,
}

impl ErasurePropagator {
    pub fn new(cfg: &ModelConfig, scheme: SchemeId) -> Result<Self> {
        let reg = LabeledRegister::single(Label::System, cfg.system_init.clone())?;
        Self::resume(cfg, scheme, reg, 0)
    }

    /// Continues from a register retained after `steps_taken` steps of the
    /// same scheme.
    pub fn resume(
        cfg: &ModelConfig,
        scheme: SchemeId,
        register: LabeledRegister,
        steps_taken: usize,
    ) -> Result<Self> {
        if !matches!(
            scheme,
            SchemeId::EraseA | SchemeId::EraseB | SchemeId::EraseC
        ) {
            return Err(Error::Argument(format!(
                "{} is not an erasure scheme",
                scheme.name()
            )));
        }
        cfg.validate()?;
        if cfg.depth != 1 {
            return Err(Error::Unsupported(format!(
                "erasure scheme {} is defined for memory depth 1 only, got {}",
                scheme.name(),
                cfg.depth
            )));
        }
        if !register.contains(Label::System)
            || (steps_taken > 0 && !register.contains(Label::Ancilla(steps_taken)))
        {
            return Err(Error::Argument(format!(
                "register {:?} cannot follow step {steps_taken}",
                register.labels()
            )));
        }
        Ok(Self {
            scheme,
            set: CollisionSet::new(cfg)?,
            reg: register,
            fresh: cfg.ancilla_state(),
            cfg: cfg.clone(),
            steps_taken,
        })
    }

    fn ancilla_ancilla(&mut self, n: usize) -> Result<()> {
        let pair = [Label::Ancilla(n - 1), Label::Ancilla(n)];
        self.reg = self.reg.apply_on(&pair, &self.set.aa)?;
        Ok(())
    }
}

impl Propagator for ErasurePropagator {
    fn scheme(&self) -> SchemeId {
        self.scheme
    }

    fn steps_taken(&self) -> usize {
        self.steps_taken
    }

    fn register(&self) -> &LabeledRegister {
        &self.reg
    }

    fn advance(&mut self) -> Result<Vec<AncillaExchange>> {
        let n = self.steps_taken + 1;
        let cap = self.cfg.max_qubits;
        let current = Label::Ancilla(n);
        match self.scheme {
            SchemeId::EraseA => {
                if n > 1 {
                    // The system is already uncorrelated from E_{n-1}, so the
                    // AA collision only needs the two ancillas.
                    let system = self.reg.marginal(Label::System)?;
                    let previous = self.reg.partial_trace(&[Label::Ancilla(n - 1)])?;
                    let pair = previous
                        .append(current, &self.fresh, cap)?
                        .apply_on(&[Label::Ancilla(n - 1), current], &self.set.aa)?;
                    let incoming = pair.marginal(current)?;
                    self.reg = LabeledRegister::product(
                        &[(Label::System, system), (current, incoming)],
                        cap,
                    )?;
                } else {
                    self.reg = self.reg.append(current, &self.fresh, cap)?;
                }
            }
            SchemeId::EraseB => {
                self.reg = self.reg.append(current, &self.fresh, cap)?;
                if n > 1 {
                    self.ancilla_ancilla(n)?;
                    self.reg = self.reg.trace_out(&[Label::Ancilla(n - 1)])?;
                }
            }
            SchemeId::EraseC => {
                self.reg = self.reg.append(current, &self.fresh, cap)?;
                if n > 2 {
                    self.reg = self.reg.trace_out(&[Label::Ancilla(n - 2)])?;
                }
                if n > 1 {
                    self.ancilla_ancilla(n)?;
                }
            }
            _ => unreachable!("checked in resume"),
        }
        let (reg, ex) = collide_with_system(&self.reg, current, n, &self.set.sa)?;
        self.reg = reg;
        if self.scheme == SchemeId::EraseA {
            self.reg = self.reg.decorrelate(&[Label::System])?;
        }
        self.steps_taken = n;
        Ok(vec![ex])
    }
}

/// System plus `d` memory slots and `d` fresh slots.
///
/// Each step the memory collides with the first fresh slot, the fresh
/// contents are swapped into the memory, the outgoing memory states are
/// replaced by fresh ancillas, and the system collides with the memory.
pub struct EmbeddedPropagator {
    cfg: ModelConfig,
    set: CollisionSet,
    reg: LabeledRegister,
    fresh: DensityOperator,
    steps_taken: usize,
}

impl EmbeddedPropagator {
    pub fn new(cfg: &ModelConfig) -> Result<Self> {
        cfg.validate()?;
        if cfg.depth > 2 {
            return Err(Error::Unsupported(format!(
                "memory-embedded evolution supports depth 1 or 2, got {}",
                cfg.depth
            )));
        }
        let fresh = cfg.ancilla_state();
        let mut factors = vec![(Label::System, cfg.system_init.clone())];
        factors.extend((1..=cfg.depth).map(|j| (Label::Memory(j), fresh.clone())));
        factors.extend((1..=cfg.depth).map(|j| (Label::Fresh(j), fresh.clone())));
        Ok(Self {
            set: CollisionSet::new(cfg)?,
            reg: LabeledRegister::product(&factors, cfg.max_qubits)?,
            fresh,
            cfg: cfg.clone(),
            steps_taken: 0,
        })
    }

    /// Slot holding the `i`-th ancilla (1-based) of the collision window.
    fn window_slot(&self, i: usize) -> Label {
        if i <= self.cfg.depth {
            Label::Memory(i)
        } else {
            Label::Fresh(i - self.cfg.depth)
        }
    }
}

impl Propagator for EmbeddedPropagator {
    fn scheme(&self) -> SchemeId {
        SchemeId::Embedded
    }

    fn steps_taken(&self) -> usize {
        self.steps_taken
    }

    fn register(&self) -> &LabeledRegister {
        &self.reg
    }

    fn advance(&mut self) -> Result<Vec<AncillaExchange>> {
        let n = self.steps_taken + 1;
        let d = self.cfg.depth;
        if n > 1 {
            for (l, m) in aa_pairs(1, d + 1, self.cfg.aa_ordering) {
                let pair = [self.window_slot(l), self.window_slot(m)];
                self.reg = self.reg.apply_on(&pair, &self.set.aa)?;
            }
            let swap = crate::qcore::swap_unitary();
            for j in 1..=d {
                self.reg = self
                    .reg
                    .apply_on(&[Label::Memory(j), Label::Fresh(j)], &swap)?;
            }
            for j in 1..=d {
                self.reg = self.reg.refresh(Label::Fresh(j), &self.fresh)?;
            }
        }
        let mut exchanges = Vec::with_capacity(d);
        for j in 1..=d {
            let (reg, ex) =
                collide_with_system(&self.reg, Label::Memory(j), (n - 1) * d + j, &self.set.sa)?;
            self.reg = reg;
            exchanges.push(ex);
        }
        self.steps_taken = n;
        Ok(exchanges)
    }
}

pub fn propagator(cfg: &ModelConfig, scheme: SchemeId) -> Result<Box<dyn Propagator>> {
    Ok(match scheme {
        SchemeId::FullChain => Box::new(FullChainPropagator::new(cfg)?),
        SchemeId::Embedded => Box::new(EmbeddedPropagator::new(cfg)?),
        s => Box::new(ErasurePropagator::new(cfg, s)?),
    })
}

fn run(mut p: Box<dyn Propagator>, cfg: &ModelConfig, keep_registers: bool) -> Result<Trajectory> {
    let mut records = Vec::with_capacity(cfg.steps + 1);
    records.push(StepRecord {
        step: 0,
        system: cfg.system_init.clone(),
        register: keep_registers.then(|| p.register().clone()),
        exchanges: Vec::new(),
    });
    for step in 1..=cfg.steps {
        let exchanges = p.advance()?;
        records.push(StepRecord {
            step,
            system: p.system_state()?,
            register: keep_registers.then(|| p.register().clone()),
            exchanges,
        });
    }
    Ok(Trajectory {
        scheme: p.scheme(),
        records,
    })
}

/// Runs `cfg.steps` steps of `scheme`, optionally keeping every retained register.
pub fn evolve_with(
    cfg: &ModelConfig,
    scheme: SchemeId,
    keep_registers: bool,
) -> Result<Trajectory> {
    run(propagator(cfg, scheme)?, cfg, keep_registers)
}

pub fn evolve(cfg: &ModelConfig, scheme: SchemeId) -> Result<Trajectory> {
    evolve_with(cfg, scheme, false)
}

pub fn evolve_full_chain(cfg: &ModelConfig) -> Result<Trajectory> {
    evolve(cfg, SchemeId::FullChain)
}

/// Runs one of the erasure schemes A, B or C.
pub fn evolve_scheme(cfg: &ModelConfig, scheme: SchemeId) -> Result<Trajectory> {
    run(Box::new(ErasurePropagator::new(cfg, scheme)?), cfg, false)
}

pub fn evolve_embedded(cfg: &ModelConfig) -> Result<Trajectory> {
    evolve(cfg, SchemeId::Embedded)
}
