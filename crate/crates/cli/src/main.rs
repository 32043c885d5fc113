use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use colmem_cli::{execute, load_config, presets, CliError, RunSpec};

/// Collision-model simulator: writes deterministic CSV datasets.
#[derive(Parser)]
#[command(name = "colmem", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a configuration file.
    Run {
        config: PathBuf,
        /// Output CSV path; overrides `output` in the file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a figure preset.
    Preset {
        name: String,
        /// Output CSV path; defaults to `<name>.csv`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a preset as a configuration file.
    DumpConfig { name: String },
    /// List the available presets.
    ListPresets,
}

fn preset(name: &str) -> Result<RunSpec, CliError> {
    presets::preset(name).ok_or_else(|| CliError::UnknownPreset(name.to_string()))
}

fn report(spec: &RunSpec, out: Option<&Path>) -> Result<(), CliError> {
    let (path, notes) = execute(spec, out)?;
    println!(
        "wrote {} ({} experiment)",
        path.display(),
        spec.experiment.kind()
    );
    for note in notes {
        println!("  {note}");
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run { config, out } => {
            load_config(&config).and_then(|spec| report(&spec, out.as_deref()))
        }
        Command::Preset { name, out } => {
            preset(&name).and_then(|spec| report(&spec, out.as_deref()))
        }
        Command::DumpConfig { name } => preset(&name).map(|spec| print!("{}", spec.to_toml())),
        Command::ListPresets => {
            for name in presets::NAMES {
                println!(
                    "{name:<6}  {}",
                    presets::description(name).unwrap_or_default()
                );
            }
            Ok(())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
