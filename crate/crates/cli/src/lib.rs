//! Command-line front end for `updrift`.

pub mod commands;
pub mod config;
pub mod render;

use std::ffi::OsString;
use std::path::PathBuf;

use anyhow::bail;
use clap::Parser;

pub use config::{Command, ExperimentConfig, Format};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INCONSISTENT: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_WITHHELD: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "updrift", version, about = "Drift bounds, simulations and verdicts")]
pub struct Cli {
    /// Read the experiment from a TOML file instead of a subcommand.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub trials: Option<u64>,
    #[arg(long, global = true)]
    pub cap: Option<u64>,
    /// Master seed (default 20190713).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Option<Command>,
}

impl Cli {
    /// Merges the config file (if any) with command-line flags; flags win.
    pub fn into_config(self) -> anyhow::Result<ExperimentConfig> {
        let mut cfg = match (self.config, self.command) {
            (Some(_), Some(_)) => bail!("give either --config or a subcommand, not both"),
            (None, None) => bail!("a subcommand or --config is required"),
            (Some(path), None) => ExperimentConfig::load(&path)?,
            (None, Some(cmd)) => ExperimentConfig::new(cmd),
        };
        if self.trials.is_some() {
            cfg.trials = self.trials;
        }
        if self.cap.is_some() {
            cfg.cap = self.cap;
        }
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
        if self.out.is_some() {
            cfg.out = self.out;
        }
        if let Some(format) = self.format {
            cfg.format = format;
        }
        Ok(cfg)
    }
}

/// Runs the parsed configuration and returns the exit code. Output is only
/// written once the command has succeeded.
pub fn run_config(cfg: &ExperimentConfig) -> anyhow::Result<u8> {
    let out = commands::execute(cfg)?;
    let text = render::render(cfg, &out.result)?;
    match &cfg.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(out.exit_code)
}

pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = cli.into_config().and_then(|cfg| run_config(&cfg));
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_USAGE
        }
    }
}
