//! Parameter sets that regenerate the figure datasets.

use std::f64::consts::FRAC_PI_2;
use std::path::PathBuf;

use colmem_core::engine::SchemeId;
use colmem_core::thermo::DecompositionSource;

use crate::config::{AncillaSpec, Experiment, MiMode, ModelSpec, RunSpec, StateSpec};

pub const NAMES: [&str; 8] = [
    "fig2a", "fig2b", "fig3a", "fig3b", "fig5", "fig7", "fig8a", "fig8b",
];

const STRONG_AA: f64 = 0.95 * FRAC_PI_2;

pub fn description(name: &str) -> Option<&'static str> {
    Some(match name {
        "fig2a" => "trace distance under scheme A, anisotropic couplings",
        "fig2b" => "trace distance under schemes B and C, anisotropic couplings",
        "fig3a" => "mutual information of the system with the two latest ancillas (scheme C)",
        "fig3b" => "mutual information of the system with ancillas 1, 25, 100 and 250",
        "fig5" => "entropy-change decomposition for the two-ancilla model",
        "fig7" => "heat flux against trace-distance flux, thermal ancillas",
        "fig8a" => "entropy decomposition on truncated registers, strong AA collisions",
        "fig8b" => "entropy decomposition on truncated registers, no AA collisions",
        _ => return None,
    })
}

/// `J_x = 2J_y = J_z = 1` for both collision kinds, weak SA, strong AA.
fn anisotropic(steps: usize) -> ModelSpec {
    ModelSpec {
        sa_coupling: [1.0, 0.5, 1.0],
        aa_coupling: [1.0, 0.5, 1.0],
        tau_sa: 0.05,
        tau_aa: STRONG_AA,
        steps,
        ..ModelSpec::default()
    }
}

/// Partial swaps for every collision, excited system, ground ancillas.
fn partial_swap(tau_aa: f64, steps: usize) -> ModelSpec {
    ModelSpec {
        tau_sa: 0.05,
        tau_aa,
        steps,
        system: StateSpec::One,
        ..ModelSpec::default()
    }
}

fn canonical_pairs() -> Vec<(StateSpec, StateSpec)> {
    vec![
        (StateSpec::Zero, StateSpec::One),
        (StateSpec::Plus, StateSpec::Minus),
    ]
}

pub fn preset(name: &str) -> Option<RunSpec> {
    let (model, experiment) = match name {
        "fig2a" => (
            anisotropic(300),
            Experiment::Distance {
                schemes: vec![SchemeId::EraseA],
                pairs: canonical_pairs(),
            },
        ),
        "fig2b" => (
            anisotropic(300),
            Experiment::Distance {
                schemes: vec![SchemeId::EraseB, SchemeId::EraseC],
                pairs: canonical_pairs(),
            },
        ),
        "fig3a" => (
            ModelSpec {
                system: StateSpec::Plus,
                ..anisotropic(300)
            },
            Experiment::MiProfile(MiMode::Last),
        ),
        "fig3b" => (
            ModelSpec {
                system: StateSpec::Plus,
                ..anisotropic(400)
            },
            Experiment::MiProfile(MiMode::Fixed(vec![1, 25, 100, 250])),
        ),
        "fig5" => (
            partial_swap(STRONG_AA, 200),
            Experiment::ThermoDecomposition {
                sources: vec![DecompositionSource::TwoAncillaToy],
            },
        ),
        "fig7" => (
            ModelSpec {
                ancilla: AncillaSpec::Gibbs { beta: 1.0 },
                system: StateSpec::Zero,
                ..partial_swap(STRONG_AA, 300)
            },
            Experiment::HeatFlux {
                pair: (StateSpec::Zero, StateSpec::One),
            },
        ),
        "fig8a" | "fig8b" => (
            partial_swap(if name == "fig8a" { STRONG_AA } else { 0.0 }, 200),
            Experiment::ThermoDecomposition {
                sources: vec![DecompositionSource::EraseB, DecompositionSource::EraseC],
            },
        ),
        _ => return None,
    };
    Some(RunSpec {
        model,
        experiment,
        output: Some(PathBuf::from(format!("{name}.csv"))),
    })
}
