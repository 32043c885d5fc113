use super::config::{AaOrdering, ModelConfig};
use crate::qcore::{collision_unitary, Label, UnitaryOperator};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CollisionKind {
    SystemAncilla,
    AncillaAncilla,
}

/// One collision of a step: which kind, which pair, and its unitary.
#[derive(Clone, Debug, PartialEq)]
pub struct Collision {
    pub kind: CollisionKind,
    pub targets: [Label; 2],
    pub unitary: UnitaryOperator,
}

/// Ancilla index pairs `(l, m)`, `l < m`, of the window `lo..=hi` in the
/// configured order.
pub(crate) fn aa_pairs(lo: usize, hi: usize, ordering: AaOrdering) -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize)> = (lo..=hi)
        .flat_map(|l| (l + 1..=hi).map(move |m| (l, m)))
        .collect();
    if ordering == AaOrdering::ReverseLexicographic {
        pairs.reverse();
    }
    pairs
}

/// Collision pattern of step `n` as physical ancilla indices, in application
/// order: the ancilla-ancilla pairs first, then the system-ancilla collisions.
pub(crate) fn plan(
    depth: usize,
    n: usize,
    ordering: AaOrdering,
) -> (Vec<(usize, usize)>, Vec<usize>) {
    let aa = if n > 1 {
        aa_pairs((n - 2) * depth + 1, (n - 1) * depth + 1, ordering)
    } else {
        Vec::new()
    };
    let sa = ((n - 1) * depth + 1..=n * depth).collect();
    (aa, sa)
}

/// The two collision unitaries of a configuration, built once.
#[derive(Clone, Debug)]
pub(crate) struct CollisionSet {
    pub sa: UnitaryOperator,
    pub aa: UnitaryOperator,
}

impl CollisionSet {
    pub fn new(cfg: &ModelConfig) -> Result<Self> {
        Ok(Self {
            sa: collision_unitary(&cfg.sa_coupling, cfg.tau_sa)?,
            aa: collision_unitary(&cfg.aa_coupling, cfg.tau_aa)?,
        })
    }
}

/// Ordered collision list of step `n ≥ 1` in the full chain.
pub fn step_operator(cfg: &ModelConfig, n: usize) -> Result<Vec<Collision>> {
    if n == 0 {
        return Err(Error::Argument("steps are numbered from 1".into()));
    }
    cfg.validate()?;
    let set = CollisionSet::new(cfg)?;
    Ok(step_collisions(&set, cfg, n))
}

pub(crate) fn step_collisions(set: &CollisionSet, cfg: &ModelConfig, n: usize) -> Vec<Collision> {
    let (aa, sa) = plan(cfg.depth, n, cfg.aa_ordering);
    let aa = aa.into_iter().map(|(l, m)| Collision {
        kind: CollisionKind::AncillaAncilla,
        targets: [Label::Ancilla(l), Label::Ancilla(m)],
        unitary: set.aa.clone(),
    });
    let sa = sa.into_iter().map(|k| Collision {
        kind: CollisionKind::SystemAncilla,
        targets: [Label::System, Label::Ancilla(k)],
        unitary: set.sa.clone(),
    });
    aa.chain(sa).collect()
}
