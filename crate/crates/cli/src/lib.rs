//! Configuration loading, figure presets and CSV output for the `colmem`
//! command.

pub mod config;
pub mod error;
pub mod experiments;
pub mod output;
pub mod presets;

use std::path::{Path, PathBuf};

pub use config::{load_config, parse_config, RunSpec};
pub use error::CliError;

/// Runs `spec` and writes its CSV to `out`, falling back to the configured
/// output path. Returns the path written and the run's summary lines.
pub fn execute(spec: &RunSpec, out: Option<&Path>) -> Result<(PathBuf, Vec<String>), CliError> {
    let path = out
        .map(Path::to_path_buf)
        .or_else(|| spec.output.clone())
        .ok_or_else(|| {
            CliError::validation(
                "experiment.output",
                "no output path in the configuration or on the command line",
            )
        })?;
    let table = experiments::run(spec)?;
    output::write_csv_file(&table, &path)?;
    Ok((path, table.notes))
}
