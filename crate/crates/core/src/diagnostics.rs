//! Trace-distance revivals and system-ancilla correlation profiles.

use crate::engine::{
    evolve, ErasurePropagator, FullChainPropagator, ModelConfig, Propagator, SchemeId,
};
use crate::qcore::{collision_unitary, trace_distance, DensityOperator, Label, LabeledRegister};
use crate::{Error, Result};

/// Two initial system states whose distinguishability is tracked.
#[derive(Clone, Debug, PartialEq)]
pub struct StatePair {
    pub first: DensityOperator,
    pub second: DensityOperator,
}

impl StatePair {
    pub fn new(first: DensityOperator, second: DensityOperator) -> Result<Self> {
        if first.dim() != 2 || second.dim() != 2 {
            return Err(Error::Argument("state pairs hold qubit states".into()));
        }
        Ok(Self { first, second })
    }

    /// `{|0⟩, |1⟩}`.
    pub fn zero_one() -> Self {
        Self {
            first: DensityOperator::zero(),
            second: DensityOperator::one(),
        }
    }

    /// `{|+⟩, |−⟩}`.
    pub fn plus_minus() -> Self {
        Self {
            first: DensityOperator::plus(),
            second: DensityOperator::minus(),
        }
    }

    /// Whether the members are orthogonal (trace distance 1).
    pub fn is_orthogonal(&self) -> bool {
        trace_distance(&self.first, &self.second).is_ok_and(|d| (d - 1.0).abs() < 1e-12)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesRecord {
    pub step: usize,
    pub value: f64,
}

pub fn values(series: &[SeriesRecord]) -> Vec<f64> {
    series.iter().map(|r| r.value).collect()
}

/// `𝒟_n` between the two members of `pair`, evolved under the same scheme.
pub fn distance_trajectory(
    cfg: &ModelConfig,
    scheme: SchemeId,
    pair: &StatePair,
) -> Result<Vec<SeriesRecord>> {
    let a = evolve(&cfg.clone().with_system(pair.first.clone()), scheme)?;
    let b = evolve(&cfg.clone().with_system(pair.second.clone()), scheme)?;
    Ok(a.deviation_series(&b)?
        .into_iter()
        .enumerate()
        .map(|(step, value)| SeriesRecord { step, value })
        .collect())
}

/// Sum of positive increments `Σ max(𝒟_{n+1} − 𝒟_n, 0)`; zero for fewer than
/// two points.
pub fn blp_accumulation(series: &[f64]) -> f64 {
    series.windows(2).map(|w| (w[1] - w[0]).max(0.0)).sum()
}

/// Largest single-step increase of a series (negative if strictly decreasing).
pub fn max_increase(series: &[f64]) -> f64 {
    series
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::NEG_INFINITY, f64::max)
}

/// `ℐ(S:E_n)` and `ℐ(S:E_{n−1})` sampled at the end of step `n`, i.e. just
/// before the next collision. Both series start at `n = 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct MiProfile {
    pub latest: Vec<SeriesRecord>,
    pub previous: Vec<SeriesRecord>,
}

pub fn mi_profile_last_ancillas(cfg: &ModelConfig, n_max: usize) -> Result<MiProfile> {
    let mut p = ErasurePropagator::new(cfg, SchemeId::EraseC)?;
    let mut profile = MiProfile {
        latest: Vec::new(),
        previous: Vec::new(),
    };
    for n in 1..=n_max {
        p.advance()?;
        if n < 2 {
            continue;
        }
        let reg = p.register();
        for (series, k) in [(&mut profile.latest, n), (&mut profile.previous, n - 1)] {
            let pair = reg.partial_trace(&[Label::System, Label::Ancilla(k)])?;
            series.push(SeriesRecord {
                step: n,
                value: pair.mutual_information(&[Label::System])?,
            });
        }
    }
    Ok(profile)
}

/// `ℐ(S:E_k)` at every step `0..=n_max`; zero while `E_k` has not entered
/// the dynamics.
///
/// For memory depth 1 the retained register is the nested one plus `E_k`
/// kept as a spectator, at most four qubits, so `k` and `n_max` are not
/// bounded by the full-chain capacity. Deeper memories run the full chain.
pub fn mi_profile_fixed_ancilla(
    cfg: &ModelConfig,
    k: usize,
    n_max: usize,
) -> Result<Vec<SeriesRecord>> {
    if k == 0 {
        return Err(Error::Argument("ancillas are numbered from 1".into()));
    }
    if cfg.depth != 1 {
        return mi_profile_fixed_ancilla_full_chain(cfg, k, n_max);
    }
    cfg.validate()?;
    let sa = collision_unitary(&cfg.sa_coupling, cfg.tau_sa)?;
    let aa = collision_unitary(&cfg.aa_coupling, cfg.tau_aa)?;
    let fresh = cfg.ancilla_state();
    let cap = cfg.max_qubits;
    let mut reg = LabeledRegister::single(Label::System, cfg.system_init.clone())?;
    let mut out = vec![SeriesRecord {
        step: 0,
        value: 0.0,
    }];
    for n in 1..=n_max {
        let current = Label::Ancilla(n);
        reg = reg.append(current, &fresh, cap)?;
        if n > 1 {
            let previous = Label::Ancilla(n - 1);
            reg = reg.apply_on(&[previous, current], &aa)?;
            if n - 1 != k {
                reg = reg.trace_out(&[previous])?;
            }
        }
        reg = reg.apply_on(&[Label::System, current], &sa)?;
        out.push(SeriesRecord {
            step: n,
            value: system_ancilla_mi(&reg, k)?,
        });
    }
    Ok(out)
}

fn system_ancilla_mi(reg: &LabeledRegister, k: usize) -> Result<f64> {
    if !reg.contains(Label::Ancilla(k)) {
        return Ok(0.0);
    }
    reg.partial_trace(&[Label::System, Label::Ancilla(k)])?
        .mutual_information(&[Label::System])
}

/// [`mi_profile_fixed_ancilla`] evaluated on the full chain.
pub fn mi_profile_fixed_ancilla_full_chain(
    cfg: &ModelConfig,
    k: usize,
    n_max: usize,
) -> Result<Vec<SeriesRecord>> {
    if k == 0 {
        return Err(Error::Argument("ancillas are numbered from 1".into()));
    }
    let mut p = FullChainPropagator::new(&cfg.clone().with_steps(n_max))?;
    let mut out = vec![SeriesRecord {
        step: 0,
        value: 0.0,
    }];
    for n in 1..=n_max {
        p.advance()?;
        out.push(SeriesRecord {
            step: n,
            value: system_ancilla_mi(p.register(), k)?,
        });
    }
    Ok(out)
}
