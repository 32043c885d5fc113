//! Run configuration files: a `[model]` and an `[experiment]` table of
//! `key = value` pairs.

use std::path::{Path, PathBuf};

use colmem_core::diagnostics::StatePair;
use colmem_core::engine::{AaOrdering, AncillaInit, ModelConfig, SchemeId};
use colmem_core::qcore::{CouplingTriple, DensityOperator, DEFAULT_MAX_QUBITS};
use colmem_core::thermo::DecompositionSource;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// A qubit state as written in a configuration file.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StateSpec {
    Zero,
    One,
    Plus,
    Minus,
    Bloch([f64; 3]),
}

impl StateSpec {
    pub fn density(&self) -> DensityOperator {
        match *self {
            StateSpec::Zero => DensityOperator::zero(),
            StateSpec::One => DensityOperator::one(),
            StateSpec::Plus => DensityOperator::plus(),
            StateSpec::Minus => DensityOperator::minus(),
            StateSpec::Bloch([x, y, z]) => {
                DensityOperator::from_bloch(x, y, z).expect("validated Bloch vector")
            }
        }
    }

    /// Short name used in CSV column headers.
    pub fn label(&self) -> String {
        match self {
            StateSpec::Zero => "zero".into(),
            StateSpec::One => "one".into(),
            StateSpec::Plus => "plus".into(),
            StateSpec::Minus => "minus".into(),
            StateSpec::Bloch([x, y, z]) => format!("bloch({x} {y} {z})"),
        }
    }

    fn from_raw(raw: &RawState, key: &str) -> Result<Self, CliError> {
        match raw {
            RawState::Name(name) => match name.as_str() {
                "zero" => Ok(StateSpec::Zero),
                "one" => Ok(StateSpec::One),
                "plus" => Ok(StateSpec::Plus),
                "minus" => Ok(StateSpec::Minus),
                other => Err(CliError::validation(
                    key,
                    format!(
                        "unknown state {other:?}; expected zero, one, plus, minus or [x, y, z]"
                    ),
                )),
            },
            RawState::Bloch(v) => {
                let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
                if !v.iter().all(|c| c.is_finite()) || norm > 1.0 + 1e-12 {
                    return Err(CliError::validation(
                        key,
                        "Bloch vector must be finite with length ≤ 1",
                    ));
                }
                Ok(StateSpec::Bloch(*v))
            }
        }
    }

    fn to_raw(self) -> RawState {
        match self {
            StateSpec::Bloch(v) => RawState::Bloch(v),
            named => RawState::Name(named.label()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AncillaSpec {
    Ground,
    Excited,
    Gibbs { beta: f64 },
    State(StateSpec),
}

impl AncillaSpec {
    pub fn init(&self) -> AncillaInit {
        match *self {
            AncillaSpec::Ground => AncillaInit::Ground,
            AncillaSpec::Excited => AncillaInit::Excited,
            AncillaSpec::Gibbs { beta } => AncillaInit::Gibbs { beta },
            AncillaSpec::State(s) => AncillaInit::Explicit(s.density()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModelSpec {
    pub sa_coupling: [f64; 3],
    pub aa_coupling: [f64; 3],
    pub tau_sa: f64,
    pub tau_aa: f64,
    pub depth: usize,
    pub steps: usize,
    pub omega0: f64,
    pub ancilla: AncillaSpec,
    pub system: StateSpec,
    pub aa_ordering: AaOrdering,
    pub max_qubits: usize,
}

impl Default for ModelSpec {
    fn default() -> Self {
        Self {
            sa_coupling: [1.0; 3],
            aa_coupling: [1.0; 3],
            tau_sa: 0.0,
            tau_aa: 0.0,
            depth: 1,
            steps: 1,
            omega0: 1.0,
            ancilla: AncillaSpec::Ground,
            system: StateSpec::Zero,
            aa_ordering: AaOrdering::Lexicographic,
            max_qubits: DEFAULT_MAX_QUBITS,
        }
    }
}

impl ModelSpec {
    pub fn config(&self) -> ModelConfig {
        let triple = |[jx, jy, jz]: [f64; 3]| CouplingTriple { jx, jy, jz };
        ModelConfig {
            sa_coupling: triple(self.sa_coupling),
            aa_coupling: triple(self.aa_coupling),
            tau_sa: self.tau_sa,
            tau_aa: self.tau_aa,
            depth: self.depth,
            steps: self.steps,
            omega0: self.omega0,
            ancilla_init: self.ancilla.init(),
            system_init: self.system.density(),
            aa_ordering: self.aa_ordering,
            max_qubits: self.max_qubits,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum MiMode {
    /// `ℐ(S:E_n)` and `ℐ(S:E_{n−1})`.
    Last,
    /// `ℐ(S:E_k)` for each listed `k`.
    Fixed(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Experiment {
    Distance {
        schemes: Vec<SchemeId>,
        pairs: Vec<(StateSpec, StateSpec)>,
    },
    MiProfile(MiMode),
    ThermoDecomposition {
        sources: Vec<DecompositionSource>,
    },
    HeatFlux {
        pair: (StateSpec, StateSpec),
    },
    EmbedCheck,
    SchemeCompare {
        schemes: Vec<SchemeId>,
    },
}

impl Experiment {
    pub fn kind(&self) -> &'static str {
        match self {
            Experiment::Distance { .. } => "distance",
            Experiment::MiProfile(_) => "mi-profile",
            Experiment::ThermoDecomposition { .. } => "thermo-decomposition",
            Experiment::HeatFlux { .. } => "heat-flux",
            Experiment::EmbedCheck => "embed-check",
            Experiment::SchemeCompare { .. } => "scheme-compare",
        }
    }
}

/// A validated configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct RunSpec {
    pub model: ModelSpec,
    pub experiment: Experiment,
    pub output: Option<PathBuf>,
}

impl RunSpec {
    pub fn pair(p: &(StateSpec, StateSpec)) -> StatePair {
        StatePair {
            first: p.0.density(),
            second: p.1.density(),
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(&RawConfig::from_spec(self)).expect("configuration serializes")
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
enum RawState {
    Name(String),
    Bloch([f64; 3]),
}

#[derive(Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    #[serde(skip_serializing_if = "Option::is_none")]
    sa_coupling: Option<[f64; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    aa_coupling: Option<[f64; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tau_sa: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tau_aa: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    depth: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    steps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    omega0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ancilla_init: Option<RawState>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ancilla_beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    system_init: Option<RawState>,
    #[serde(skip_serializing_if = "Option::is_none")]
    aa_ordering: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_qubits: Option<usize>,
}

#[derive(Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawExperiment {
    #[serde(skip_serializing_if = "Option::is_none")]
    kind: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    schemes: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pairs: Option<Vec<[RawState; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pair: Option<[RawState; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mode: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ancillas: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sources: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    output: Option<String>,
}

#[derive(Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default)]
    model: RawModel,
    #[serde(default)]
    experiment: RawExperiment,
}

fn ordering_name(o: AaOrdering) -> &'static str {
    match o {
        AaOrdering::Lexicographic => "lexicographic",
        AaOrdering::ReverseLexicographic => "reverse-lexicographic",
    }
}

fn non_negative(key: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() && v >= 0.0 {
        Ok(v)
    } else {
        Err(CliError::validation(
            key,
            format!("{v} must be finite and ≥ 0"),
        ))
    }
}

fn finite_triple(key: &str, v: [f64; 3]) -> Result<[f64; 3], CliError> {
    if v.iter().all(|c| c.is_finite()) {
        Ok(v)
    } else {
        Err(CliError::validation(key, "couplings must be finite"))
    }
}

fn scheme(key: &str, name: &str) -> Result<SchemeId, CliError> {
    SchemeId::from_name(name).ok_or_else(|| {
        let known: Vec<&str> = SchemeId::ALL.iter().map(|s| s.name()).collect();
        CliError::validation(
            key,
            format!(
                "unknown scheme {name:?}; expected one of {}",
                known.join(", ")
            ),
        )
    })
}

fn pair(key: &str, raw: &[RawState; 2]) -> Result<(StateSpec, StateSpec), CliError> {
    Ok((
        StateSpec::from_raw(&raw[0], key)?,
        StateSpec::from_raw(&raw[1], key)?,
    ))
}

/// Rejects keys that the chosen experiment does not read.
fn unused(kind: &str, keys: &[(&str, bool)]) -> Result<(), CliError> {
    match keys.iter().find(|(_, present)| *present) {
        Some((key, _)) => Err(CliError::validation(
            &format!("experiment.{key}"),
            format!("not used by {kind} experiments"),
        )),
        None => Ok(()),
    }
}

impl RawConfig {
    fn into_spec(self) -> Result<RunSpec, CliError> {
        let m = self.model;
        let d = ModelSpec::default();
        let ancilla = match (&m.ancilla_init, m.ancilla_beta) {
            (None, None) => AncillaSpec::Ground,
            (Some(RawState::Name(n)), beta) if n == "gibbs" => AncillaSpec::Gibbs {
                beta: non_negative(
                    "model.ancilla_beta",
                    beta.ok_or_else(|| {
                        CliError::validation("model.ancilla_beta", "required for gibbs ancillas")
                    })?,
                )?,
            },
            (_, Some(_)) => {
                return Err(CliError::validation(
                    "model.ancilla_beta",
                    "only used with ancilla_init = \"gibbs\"",
                ))
            }
            (Some(RawState::Name(n)), None) if n == "ground" => AncillaSpec::Ground,
            (Some(RawState::Name(n)), None) if n == "excited" => AncillaSpec::Excited,
            (Some(raw), None) => {
                AncillaSpec::State(StateSpec::from_raw(raw, "model.ancilla_init")?)
            }
        };
        let aa_ordering = match m.aa_ordering.as_deref() {
            None | Some("lexicographic") => AaOrdering::Lexicographic,
            Some("reverse-lexicographic") => AaOrdering::ReverseLexicographic,
            Some(other) => return Err(CliError::validation(
                "model.aa_ordering",
                format!(
                    "unknown ordering {other:?}; expected lexicographic or reverse-lexicographic"
                ),
            )),
        };
        let model = ModelSpec {
            sa_coupling: finite_triple(
                "model.sa_coupling",
                m.sa_coupling.unwrap_or(d.sa_coupling),
            )?,
            aa_coupling: finite_triple(
                "model.aa_coupling",
                m.aa_coupling.unwrap_or(d.aa_coupling),
            )?,
            tau_sa: non_negative("model.tau_sa", m.tau_sa.unwrap_or(d.tau_sa))?,
            tau_aa: non_negative("model.tau_aa", m.tau_aa.unwrap_or(d.tau_aa))?,
            depth: match m.depth.unwrap_or(d.depth) {
                0 => {
                    return Err(CliError::validation(
                        "model.depth",
                        "memory depth must be ≥ 1",
                    ))
                }
                depth => depth,
            },
            steps: m.steps.unwrap_or(d.steps),
            omega0: match m.omega0.unwrap_or(d.omega0) {
                w if w.is_finite() => w,
                w => {
                    return Err(CliError::validation(
                        "model.omega0",
                        format!("{w} must be finite"),
                    ))
                }
            },
            ancilla,
            system: match &m.system_init {
                Some(raw) => StateSpec::from_raw(raw, "model.system_init")?,
                None => d.system,
            },
            aa_ordering,
            max_qubits: match m.max_qubits.unwrap_or(d.max_qubits) {
                q if q < 2 => {
                    return Err(CliError::validation(
                        "model.max_qubits",
                        "at least 2 qubits are needed",
                    ))
                }
                q => q,
            },
        };

        let e = self.experiment;
        let kind = e
            .kind
            .as_deref()
            .ok_or_else(|| CliError::validation("experiment.kind", "missing experiment kind"))?;
        let schemes = |default: Vec<SchemeId>| -> Result<Vec<SchemeId>, CliError> {
            match &e.schemes {
                None => Ok(default),
                Some(v) if v.is_empty() => Err(CliError::validation(
                    "experiment.schemes",
                    "must not be empty",
                )),
                Some(v) => v.iter().map(|s| scheme("experiment.schemes", s)).collect(),
            }
        };
        let experiment = match kind {
            "distance" => {
                unused(kind, &[("pair", e.pair.is_some()), ("mode", e.mode.is_some()), ("ancillas", e.ancillas.is_some()), ("sources", e.sources.is_some())])?;
                let pairs = match &e.pairs {
                    None => vec![(StateSpec::Zero, StateSpec::One), (StateSpec::Plus, StateSpec::Minus)],
                    Some(v) if v.is_empty() => return Err(CliError::validation("experiment.pairs", "must not be empty")),
                    Some(v) => v.iter().map(|p| pair("experiment.pairs", p)).collect::<Result<_, _>>()?,
                };
                Experiment::Distance {
                    schemes: schemes(vec![SchemeId::exact_for_depth(model.depth)])?,
                    pairs,
                }
            }
            "mi-profile" => {
                unused(kind, &[("schemes", e.schemes.is_some()), ("pairs", e.pairs.is_some()), ("pair", e.pair.is_some()), ("sources", e.sources.is_some())])?;
                match e.mode.as_deref() {
                    None | Some("last") => {
                        unused(kind, &[("ancillas", e.ancillas.is_some())])?;
                        Experiment::MiProfile(MiMode::Last)
                    }
                    Some("fixed") => {
                        let ancillas = e.ancillas.clone().unwrap_or_default();
                        if ancillas.is_empty() || ancillas.contains(&0) {
                            return Err(CliError::validation(
                                "experiment.ancillas",
                                "fixed mode needs a non-empty list of ancilla indices ≥ 1",
                            ));
                        }
                        Experiment::MiProfile(MiMode::Fixed(ancillas))
                    }
                    Some(other) => {
                        return Err(CliError::validation("experiment.mode", format!("unknown mode {other:?}; expected last or fixed")))
                    }
                }
            }
            "thermo-decomposition" => {
                unused(kind, &[("schemes", e.schemes.is_some()), ("pairs", e.pairs.is_some()), ("pair", e.pair.is_some()), ("mode", e.mode.is_some()), ("ancillas", e.ancillas.is_some())])?;
                let sources = match &e.sources {
                    None => vec![DecompositionSource::FullChain],
                    Some(v) if v.is_empty() => return Err(CliError::validation("experiment.sources", "must not be empty")),
                    Some(v) => v
                        .iter()
                        .map(|s| {
                            DecompositionSource::from_name(s).ok_or_else(|| {
                                CliError::validation(
                                    "experiment.sources",
                                    format!("unknown source {s:?}; expected full-chain, two-ancilla-toy, erase-b or erase-c"),
                                )
                            })
                        })
                        .collect::<Result<_, _>>()?,
                };
                Experiment::ThermoDecomposition { sources }
            }
            "heat-flux" => {
                unused(kind, &[("schemes", e.schemes.is_some()), ("pairs", e.pairs.is_some()), ("mode", e.mode.is_some()), ("ancillas", e.ancillas.is_some()), ("sources", e.sources.is_some())])?;
                Experiment::HeatFlux {
                    pair: match &e.pair {
                        Some(p) => pair("experiment.pair", p)?,
                        None => (StateSpec::Zero, StateSpec::One),
                    },
                }
            }
            "embed-check" => {
                unused(kind, &[("schemes", e.schemes.is_some()), ("pairs", e.pairs.is_some()), ("pair", e.pair.is_some()), ("mode", e.mode.is_some()), ("ancillas", e.ancillas.is_some()), ("sources", e.sources.is_some())])?;
                Experiment::EmbedCheck
            }
            "scheme-compare" => {
                unused(kind, &[("pairs", e.pairs.is_some()), ("pair", e.pair.is_some()), ("mode", e.mode.is_some()), ("ancillas", e.ancillas.is_some()), ("sources", e.sources.is_some())])?;
                let schemes = schemes(Vec::new())?;
                if schemes.len() < 2 {
                    return Err(CliError::validation("experiment.schemes", "scheme-compare needs at least two schemes"));
                }
                Experiment::SchemeCompare { schemes }
            }
            other => {
                return Err(CliError::validation(
                    "experiment.kind",
                    format!("unknown experiment {other:?}; expected distance, mi-profile, thermo-decomposition, heat-flux, embed-check or scheme-compare"),
                ))
            }
        };
        model
            .config()
            .validate()
            .map_err(|err| CliError::validation("model", err.to_string()))?;
        Ok(RunSpec {
            model,
            experiment,
            output: e.output.map(PathBuf::from),
        })
    }

    fn from_spec(spec: &RunSpec) -> Self {
        let m = &spec.model;
        let (ancilla_init, ancilla_beta) = match m.ancilla {
            AncillaSpec::Ground => (RawState::Name("ground".into()), None),
            AncillaSpec::Excited => (RawState::Name("excited".into()), None),
            AncillaSpec::Gibbs { beta } => (RawState::Name("gibbs".into()), Some(beta)),
            AncillaSpec::State(s) => (s.to_raw(), None),
        };
        let model = RawModel {
            sa_coupling: Some(m.sa_coupling),
            aa_coupling: Some(m.aa_coupling),
            tau_sa: Some(m.tau_sa),
            tau_aa: Some(m.tau_aa),
            depth: Some(m.depth),
            steps: Some(m.steps),
            omega0: Some(m.omega0),
            ancilla_init: Some(ancilla_init),
            ancilla_beta,
            system_init: Some(m.system.to_raw()),
            aa_ordering: Some(ordering_name(m.aa_ordering).into()),
            max_qubits: Some(m.max_qubits),
        };
        let names = |v: &[SchemeId]| Some(v.iter().map(|s| s.name().to_string()).collect());
        let raw_pair = |p: &(StateSpec, StateSpec)| [p.0.to_raw(), p.1.to_raw()];
        let mut experiment = RawExperiment {
            kind: Some(spec.experiment.kind().into()),
            output: spec.output.as_ref().map(|p| p.display().to_string()),
            ..RawExperiment::default()
        };
        match &spec.experiment {
            Experiment::Distance { schemes, pairs } => {
                experiment.schemes = names(schemes);
                experiment.pairs = Some(pairs.iter().map(raw_pair).collect());
            }
            Experiment::MiProfile(MiMode::Last) => experiment.mode = Some("last".into()),
            Experiment::MiProfile(MiMode::Fixed(ks)) => {
                experiment.mode = Some("fixed".into());
                experiment.ancillas = Some(ks.clone());
            }
            Experiment::ThermoDecomposition { sources } => {
                experiment.sources = Some(sources.iter().map(|s| s.name().to_string()).collect());
            }
            Experiment::HeatFlux { pair } => experiment.pair = Some(raw_pair(pair)),
            Experiment::EmbedCheck => {}
            Experiment::SchemeCompare { schemes } => experiment.schemes = names(schemes),
        }
        RawConfig { model, experiment }
    }
}

/// Parses and validates configuration text.
pub fn parse_config(text: &str) -> Result<RunSpec, CliError> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| CliError::Parse {
        line: e
            .span()
            .map(|s| text[..s.start.min(text.len())].matches('\n').count() + 1),
        message: e.message().trim().to_string(),
    })?;
    raw.into_spec()
}

pub fn load_config(path: &Path) -> Result<RunSpec, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path.display(), e))?;
    parse_config(&text)
}
