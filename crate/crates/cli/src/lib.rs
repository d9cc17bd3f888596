//! Command-line driver for `isoaxis-core`: experiment configs, output
//! files with manifests, and an on-disk enumeration cache.

pub mod cache;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{ExperimentConfig, Overrides};
use crate::error::CliError;
use crate::output::RunManifest;

#[derive(Debug, Parser)]
#[command(name = "isoaxis", version, about = "Truncated spectra, axes sets and twist flows of Fuchsian groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the built-in presets.
    Presets {
        #[arg(long)]
        json: bool,
    },
    /// Length spectrum.
    Spectrum(RunArgs),
    /// Angle spectrum and multiplicity profile.
    Angles(RunArgs),
    /// Angle, separation or boundary-limit sweep along the twist flow.
    TwistSweep(RunArgs),
    /// Axes-set comparison against itself, a conjugate and a subgroup.
    Isoaxial(RunArgs),
    /// Collar inequality over all crossing pairs.
    CollarCheck(RunArgs),
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// JSON config; flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub overrides: Overrides,
}

impl RunArgs {
    pub fn resolve(self) -> Result<ExperimentConfig, CliError> {
        let mut c = ExperimentConfig::load(self.config.as_deref())?;
        c.apply(self.overrides);
        Ok(c)
    }
}

type Handler = fn(&ExperimentConfig) -> Result<RunManifest, CliError>;

pub fn run(cli: Cli) -> Result<(), CliError> {
    let (args, f): (RunArgs, Handler) = match cli.command {
        Command::Presets { json } => return print_presets(json),
        Command::Spectrum(a) => (a, commands::spectrum),
        Command::Angles(a) => (a, commands::angles),
        Command::TwistSweep(a) => (a, commands::twist_sweep),
        Command::Isoaxial(a) => (a, commands::isoaxial),
        Command::CollarCheck(a) => (a, commands::collar_check),
    };
    let config = args.resolve()?;
    let manifest = f(&config)?;
    println!("{} -> {}", manifest.command, config.out_dir.display());
    println!("{}", serde_json::to_string_pretty(&manifest.summary)?);
    Ok(())
}

fn print_presets(json: bool) -> Result<(), CliError> {
    let list = commands::presets()?;
    if json {
        println!("{}", serde_json::to_string_pretty(&list)?);
        return Ok(());
    }
    for p in list {
        println!("{}", p.name);
        println!("    {}", p.description);
        println!(
            "    lengths {:.6} {:.6}, tr[a,b] = {:.6}, arithmetic: {}",
            p.lengths[0], p.lengths[1], p.commutator_trace, p.arithmetic
        );
    }
    Ok(())
}
