//! Experiment configuration: the same records the command line builds,
//! stored as TOML.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use updrift::bounds::TheoremId;
use updrift::ea::SelectionKind;
use updrift::{ProcessKind, ZeroLaw};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_SEED: u64 = updrift::rng::DEFAULT_SEED;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    #[default]
    Kv,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub schema_version: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cap: Option<u64>,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    pub format: Format,
    pub command: Command,
}

impl ExperimentConfig {
    pub fn new(command: Command) -> Self {
        ExperimentConfig {
            schema_version: SCHEMA_VERSION,
            trials: None,
            cap: None,
            seed: DEFAULT_SEED,
            out: None,
            format: Format::Kv,
            command,
        }
    }

    pub fn from_toml(text: &str) -> anyhow::Result<Self> {
        let cfg: ExperimentConfig = toml::from_str(text)?;
        if cfg.schema_version != SCHEMA_VERSION {
            bail!("unsupported schema_version {} (expected {SCHEMA_VERSION})", cfg.schema_version);
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::from_toml(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn to_toml(&self) -> anyhow::Result<String> {
        Ok(toml::to_string(self)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Subcommand)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Command {
    /// Evaluate a closed-form bound.
    Bound(BoundArgs),
    /// Monte Carlo hitting times of a process.
    Simulate(ProcessArgs),
    /// Compare a bound against simulation.
    Verify(VerifyArgs),
    /// Run the evolutionary algorithm, optionally over several n.
    Ea(EaArgs),
    /// Estimate upgrade probabilities for a constructed population.
    Levels(LevelsArgs),
    /// Tabulate a bound over one parameter.
    Sweep(SweepArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Bound(_) => "bound",
            Command::Simulate(_) => "simulate",
            Command::Verify(_) => "verify",
            Command::Ea(_) => "ea",
            Command::Levels(_) => "levels",
            Command::Sweep(_) => "sweep",
        }
    }
}

/// Bound inputs. Which are required depends on the theorem.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize, Args)]
pub struct BoundParams {
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub gamma0: Option<f64>,
    #[arg(long)]
    pub k: Option<u64>,
    /// `E[min{Y, D₀}]` for the zero-state bound.
    #[arg(long)]
    pub e0: Option<f64>,
    #[arg(long)]
    pub xmin: Option<u64>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub d0: Option<u64>,
    #[arg(long)]
    pub d: Option<u64>,
    /// Upgrade probabilities z₁..z_{m−1}, comma separated.
    #[arg(long, value_delimiter = ',')]
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub z: Vec<f64>,
    /// Number of levels when all z are equal (with --z-const).
    #[arg(long)]
    pub m: Option<u64>,
    #[arg(long)]
    pub z_const: Option<f64>,
    /// Omitted for level bounds: use the suggested λ.
    #[arg(long)]
    pub lambda: Option<u64>,
    #[arg(long)]
    pub x0: Option<f64>,
    #[arg(long)]
    pub expected_final: Option<f64>,
    #[arg(long)]
    pub drift: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Args)]
pub struct BoundArgs {
    pub theorem: TheoremId,
    #[command(flatten)]
    #[serde(flatten)]
    pub params: BoundParams,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize, Args)]
pub struct ProcessArgs {
    #[arg(long)]
    pub process: Option<ProcessKind>,
    #[arg(long)]
    pub k: Option<u64>,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub gamma0: Option<f64>,
    /// `point:V`, `bin:K:P` or `table:V=Q,...`.
    #[arg(long)]
    pub zero_law: Option<ZeroLaw>,
    #[arg(long)]
    pub xmin: Option<u64>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub x0: Option<u64>,
    /// Also solve for the exact mean (small state spaces only).
    #[arg(long)]
    #[serde(default)]
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Args)]
pub struct VerifyArgs {
    pub theorem: TheoremId,
    #[command(flatten)]
    #[serde(flatten)]
    pub process: ProcessArgs,
    /// Dip/climb distance D.
    #[arg(long)]
    pub d: Option<u64>,
    /// Replace the computed bound by this value.
    #[arg(long = "bound")]
    pub bound_override: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Args)]
pub struct EaArgs {
    /// One or more problem sizes, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    /// Defaults to ⌈n ln n⌉.
    #[arg(long)]
    pub lambda: Option<usize>,
    #[arg(long)]
    pub mu: Option<usize>,
    #[arg(long)]
    pub selection: SelectionKind,
    /// Fixed mutation rate; otherwise chi / n^pmut_power.
    #[arg(long)]
    pub pmut: Option<f64>,
    #[arg(long)]
    pub chi: Option<f64>,
    #[arg(long)]
    pub pmut_power: Option<i32>,
    /// onemax, leadingones or onemax_partial.
    #[arg(long, default_value = "onemax")]
    pub fitness: String,
    /// Evaluation probability for onemax_partial.
    #[arg(long)]
    pub c: Option<f64>,
    /// γ₀ for the level model; defaults to 0.5, or μ/λ for ranking.
    #[arg(long)]
    pub gamma0: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Args)]
pub struct LevelsArgs {
    #[arg(long)]
    pub n: usize,
    /// Population as `count:fitness` groups, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub groups: Vec<String>,
    /// Count offspring with true fitness ≥ j.
    #[arg(long)]
    pub j: u64,
    #[arg(long)]
    pub selection: SelectionKind,
    #[arg(long)]
    pub mu: Option<usize>,
    #[arg(long)]
    pub pmut: Option<f64>,
    #[arg(long, default_value = "onemax")]
    pub fitness: String,
    #[arg(long)]
    pub c: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Args)]
pub struct SweepArgs {
    pub theorem: TheoremId,
    /// Name of the bound input to vary (e.g. `n`, `delta`).
    #[arg(long)]
    pub param: String,
    #[arg(long, value_delimiter = ',', required = true)]
    pub values: Vec<f64>,
    #[command(flatten)]
    #[serde(flatten)]
    pub params: BoundParams,
}
