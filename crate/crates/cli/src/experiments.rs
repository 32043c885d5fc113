//! Runs a configuration and assembles its table.

use colmem_core::diagnostics::{
    blp_accumulation, distance_trajectory, mi_profile_fixed_ancilla, mi_profile_last_ancillas,
    values,
};
use colmem_core::engine::{evolve, AncillaInit, ModelConfig, SchemeId};
use colmem_core::thermo::{
    entropy_decomposition_series, flux_alignment, heat_series, EntropyDecomposition,
};
use rayon::prelude::*;

use crate::config::{Experiment, MiMode, RunSpec, StateSpec};
use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Cell {
    Int(usize),
    Float(f64),
    Empty,
}

impl Cell {
    /// Integers as is, floats with 12 significant digits.
    pub fn render(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Float(x) => format!("{x:.11e}"),
            Cell::Empty => String::new(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// One-line summaries reported after the file is written.
    pub notes: Vec<String>,
}

impl Table {
    fn with_steps(header: Vec<String>, columns: &[Vec<f64>], first_step: usize) -> Self {
        let len = columns.iter().map(Vec::len).min().unwrap_or(0);
        let rows = (0..len)
            .map(|i| {
                std::iter::once(Cell::Int(first_step + i))
                    .chain(columns.iter().map(|c| Cell::Float(c[i])))
                    .collect()
            })
            .collect();
        Table {
            header,
            rows,
            notes: Vec::new(),
        }
    }
}

fn pair_label(p: &(StateSpec, StateSpec)) -> String {
    format!("{}/{}", p.0.label(), p.1.label())
}

fn header(columns: impl IntoIterator<Item = String>) -> Vec<String> {
    std::iter::once("step".to_string()).chain(columns).collect()
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

pub fn run(spec: &RunSpec) -> Result<Table, CliError> {
    let cfg = spec.model.config();
    match &spec.experiment {
        Experiment::Distance { schemes, pairs } => distance(&cfg, schemes, pairs),
        Experiment::MiProfile(mode) => mi_profile(&cfg, mode),
        Experiment::ThermoDecomposition { sources } => {
            let series: Vec<Vec<EntropyDecomposition>> = sources
                .par_iter()
                .map(|&s| entropy_decomposition_series(&cfg, s))
                .collect::<Result<_, _>>()?;
            let gibbs = matches!(cfg.ancilla_init, AncillaInit::Gibbs { .. });
            let mut names = Vec::new();
            let mut columns: Vec<Vec<f64>> = Vec::new();
            for (source, s) in sources.iter().zip(&series) {
                let mut push = |name: &str, f: &dyn Fn(&EntropyDecomposition) -> f64| {
                    names.push(format!("{}:{name}", source.name()));
                    columns.push(s.iter().map(f).collect());
                };
                push("delta_s_system", &|d| d.delta_s_system);
                push("s_corr", &|d| d.s_corr);
                push("s_env", &|d| d.s_env);
                push("q", &|d| d.q_term);
                push("minus_delta_s_env", &|d| d.minus_delta_s_env);
                if gibbs {
                    push("q_gibbs", &|d| d.q_gibbs.unwrap_or(f64::NAN));
                }
                push("residual", &|d| d.residual());
            }
            let mut table = Table::with_steps(header(names), &columns, 0);
            for (source, s) in sources.iter().zip(&series) {
                let residuals: Vec<f64> = s.iter().map(|d| d.residual()).collect();
                table.notes.push(format!(
                    "{}: max |residual| {:.3e}",
                    source.name(),
                    max_abs(&residuals)
                ));
            }
            if series.iter().flatten().any(|d| d.regularized) {
                table
                    .notes
                    .push("pure ancilla state regularized for s_env and q".into());
            }
            Ok(table)
        }
        Experiment::HeatFlux { pair } => {
            let p = RunSpec::pair(pair);
            let scheme = SchemeId::exact_for_depth(cfg.depth);
            let heat = heat_series(&cfg.clone().with_system(p.first.clone()), scheme)?;
            let dist = values(&distance_trajectory(&cfg, scheme, &p)?);
            let rows = heat
                .iter()
                .zip(&dist)
                .enumerate()
                .map(|(i, (h, &d))| {
                    let flux = |now: f64, before: Option<f64>| {
                        before.map_or(Cell::Empty, |b| Cell::Float(now - b))
                    };
                    vec![
                        Cell::Int(h.step),
                        Cell::Float(h.q_system),
                        Cell::Float(h.q_environment),
                        Cell::Float(d),
                        flux(h.q_system, i.checked_sub(1).map(|j| heat[j].q_system)),
                        flux(d, i.checked_sub(1).map(|j| dist[j])),
                    ]
                })
                .collect();
            let mut table = Table {
                header: header(
                    [
                        "q_system",
                        "q_environment",
                        "distance",
                        "heat_flux",
                        "distance_flux",
                    ]
                    .map(String::from),
                ),
                rows,
                notes: vec![format!(
                    "pair {}, scheme {}",
                    pair_label(pair),
                    scheme.name()
                )],
            };
            table.notes.push(match flux_alignment(&cfg, &p) {
                Ok(a) => match a.agreement_fraction {
                    Some(f) => format!(
                        "sign agreement of heat flux and distance flux: {}/{} steps (fraction {f}), sign {:+}",
                        a.agreeing_steps, a.counted_steps, a.sign
                    ),
                    None => "sign agreement undefined: no step with both fluxes above 1e-10".into(),
                },
                Err(e) => format!("sign agreement not computed: {e}"),
            });
            Ok(table)
        }
        Experiment::EmbedCheck => {
            let runs: Vec<_> = [SchemeId::Embedded, SchemeId::FullChain]
                .par_iter()
                .map(|&s| evolve(&cfg, s))
                .collect::<Result<_, _>>()?;
            let dev = runs[0].deviation_series(&runs[1])?;
            let mut table = Table::with_steps(
                header(["deviation".to_string()]),
                std::slice::from_ref(&dev),
                0,
            );
            table.notes.push(format!(
                "max deviation embedded vs full chain {:.3e}",
                max_abs(&dev)
            ));
            Ok(table)
        }
        Experiment::SchemeCompare { schemes } => {
            let runs: Vec<_> = schemes
                .par_iter()
                .map(|&s| evolve(&cfg, s))
                .collect::<Result<_, _>>()?;
            let mut columns: Vec<Vec<f64>> = runs[1..]
                .iter()
                .map(|r| runs[0].deviation_series(r))
                .collect::<Result<_, _>>()?;
            let overall: Vec<f64> = (0..columns[0].len())
                .map(|i| columns.iter().map(|c| c[i]).fold(0.0, f64::max))
                .collect();
            let names = schemes[1..]
                .iter()
                .map(|s| format!("{}:deviation", s.name()))
                .chain(["max_deviation".to_string()]);
            let max = max_abs(&overall);
            columns.push(overall);
            let mut table = Table::with_steps(header(names), &columns, 0);
            table.notes.push(format!(
                "reference {}, max deviation {max:.3e}",
                schemes[0].name()
            ));
            Ok(table)
        }
    }
}

fn distance(
    cfg: &ModelConfig,
    schemes: &[SchemeId],
    pairs: &[(StateSpec, StateSpec)],
) -> Result<Table, CliError> {
    let combos: Vec<(SchemeId, &(StateSpec, StateSpec))> = schemes
        .iter()
        .flat_map(|&s| pairs.iter().map(move |p| (s, p)))
        .collect();
    let columns: Vec<Vec<f64>> = combos
        .par_iter()
        .map(|(s, p)| distance_trajectory(cfg, *s, &RunSpec::pair(p)).map(|r| values(&r)))
        .collect::<Result<_, _>>()?;
    let names: Vec<String> = combos
        .iter()
        .map(|(s, p)| format!("{}:{}", s.name(), pair_label(p)))
        .collect();
    let mut table = Table::with_steps(header(names.clone()), &columns, 0);
    for (name, c) in names.iter().zip(&columns) {
        table.notes.push(format!(
            "{name}: BLP accumulation {:.6e}",
            blp_accumulation(c)
        ));
    }
    Ok(table)
}

fn mi_profile(cfg: &ModelConfig, mode: &MiMode) -> Result<Table, CliError> {
    match mode {
        MiMode::Last => {
            let p = mi_profile_last_ancillas(cfg, cfg.steps)?;
            Ok(Table::with_steps(
                header(["mi_latest", "mi_previous"].map(String::from)),
                &[values(&p.latest), values(&p.previous)],
                2,
            ))
        }
        MiMode::Fixed(ks) => {
            let columns: Vec<Vec<f64>> = ks
                .par_iter()
                .map(|&k| mi_profile_fixed_ancilla(cfg, k, cfg.steps).map(|r| values(&r)))
                .collect::<Result<_, _>>()?;
            Ok(Table::with_steps(
                header(ks.iter().map(|k| format!("mi_E{k}"))),
                &columns,
                0,
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cells_render_with_twelve_digits() {
        assert_eq!(Cell::Float(0.1).render(), "1.00000000000e-1");
        assert_eq!(Cell::Float(-2.5e-13).render(), "-2.50000000000e-13");
        assert_eq!(Cell::Int(7).render(), "7");
        assert_eq!(Cell::Empty.render(), "");
    }

    #[test]
    fn table_rows_start_at_given_step() {
        let t = Table::with_steps(header(["a".to_string()]), &[vec![1.0, 2.0]], 2);
        assert_eq!(t.rows[0][0], Cell::Int(2));
        assert_eq!(t.rows.len(), 2);
    }
}
