//! Batch front end: `vlimit <command> [--config file] [flags]`.

mod commands;
mod config;
mod output;

use std::path::PathBuf;

use clap::Parser;

pub use commands::{execute, Command};
pub use config::{
    BorcherdsParams, CharParams, DecomposeParams, FactorizeParams, Format, LimitParams, RunConfig, ScParams, Target,
    WickParams,
};
pub use output::{error_object, render, Cell, Table, TOOL, VERSION};

use crate::error::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "vlimit", version, about = "Exact permutation-orbifold structure constants and their large-N limits")]
pub struct Args {
    #[arg(value_enum)]
    pub command: Command,
    /// TOML or JSON run configuration; flags below override its keys.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write `<command>.<format>` into this directory instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[arg(long)]
    pub cutoff: Option<u32>,
    #[arg(long)]
    pub n_min: Option<usize>,
    #[arg(long)]
    pub n_max: Option<usize>,
}

impl Args {
    pub fn resolve(&self) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        if let Some(f) = self.format {
            cfg.format = f;
        }
        if let Some(t) = self.tolerance {
            cfg.tolerance = t;
        }
        if let Some(c) = self.cutoff {
            cfg.cutoff = c;
        }
        if let Some(n) = self.n_min {
            cfg.n_min = n;
        }
        if let Some(n) = self.n_max {
            cfg.n_max = n;
        }
        Ok(cfg)
    }
}

/// Runs one command and returns the rendered artifact and where it went.
pub fn run(args: &Args) -> Result<String> {
    let cfg = args.resolve()?;
    let table = match args.jobs {
        Some(0) => return Err(Error::Config("--jobs must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Config(e.to_string()))?
            .install(|| execute(args.command, &cfg))?,
        None => execute(args.command, &cfg)?,
    };
    let text = render(args.command.name(), &cfg, &table, cfg.format)?;
    if let Some(dir) = &args.out {
        std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
        let ext = match cfg.format {
            Format::Json => "json",
            Format::Csv => "csv",
        };
        let path = dir.join(format!("{}.{ext}", args.command.name()));
        std::fs::write(&path, &text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(text)
}
