use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{mutate_standard, Bitstring, FitnessKind, FpsSampler, RankingSampler};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SelectionKind {
    FitnessProportionate,
    Tournament2,
    RankingMuComma,
}

impl fmt::Display for SelectionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SelectionKind::FitnessProportionate => "fitness_proportionate",
            SelectionKind::Tournament2 => "tournament2",
            SelectionKind::RankingMuComma => "ranking_mu_comma",
        })
    }
}

impl FromStr for SelectionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "fitness_proportionate" | "fps" => Ok(SelectionKind::FitnessProportionate),
            "tournament2" | "tournament" => Ok(SelectionKind::Tournament2),
            "ranking_mu_comma" | "ranking" => Ok(SelectionKind::RankingMuComma),
            other => Err(Error::parse(format!("unknown selection `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EaConfig {
    pub n: usize,
    pub lambda: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<usize>,
    pub selection: SelectionKind,
    pub pmut: f64,
    pub fitness: FitnessKind,
    pub seed: u64,
}

impl EaConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::domain("problem size n must be at least 1"));
        }
        if self.lambda == 0 {
            return Err(Error::domain("λ must be at least 1"));
        }
        crate::binomial::check_probability(self.pmut, "mutation rate")?;
        if self.selection == SelectionKind::RankingMuComma {
            match self.mu {
                Some(mu) if (1..=self.lambda).contains(&mu) => {}
                other => {
                    return Err(Error::domain(format!(
                        "ranking selection needs 1 ≤ μ ≤ λ = {}, got {other:?}",
                        self.lambda
                    )))
                }
            }
        }
        self.fitness.validate(self.n)
    }
}

/// Per-generation parent distribution `D(P)`.
pub(crate) enum ParentSampler {
    Fps(FpsSampler),
    Tournament(Vec<f64>),
    Ranking(RankingSampler),
}

impl ParentSampler {
    /// Evaluates the population once (fresh masks under partial
    /// evaluation) and prepares selection.
    pub(crate) fn build<R: Rng + ?Sized>(config: &EaConfig, population: &[Bitstring], rng: &mut R) -> Result<Self> {
        let fitness = population
            .iter()
            .map(|x| config.fitness.evaluate(x, rng).map(|f| f as f64))
            .collect::<Result<Vec<_>>>()?;
        Ok(match config.selection {
            SelectionKind::FitnessProportionate => ParentSampler::Fps(FpsSampler::new(&fitness)?),
            SelectionKind::Tournament2 => {
                if fitness.is_empty() {
                    return Err(Error::domain("cannot select from an empty population"));
                }
                ParentSampler::Tournament(fitness)
            }
            SelectionKind::RankingMuComma => {
                ParentSampler::Ranking(RankingSampler::new(&fitness, config.mu.unwrap_or(1), rng)?)
            }
        })
    }

    pub(crate) fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        match self {
            ParentSampler::Fps(s) => s.sample(rng),
            ParentSampler::Tournament(f) => super::select_tournament2(f, rng).expect("nonempty"),
            ParentSampler::Ranking(s) => s.sample(rng),
        }
    }
}

/// Uniformly random initial population of size λ.
pub fn initial_population<R: Rng + ?Sized>(config: &EaConfig, rng: &mut R) -> Vec<Bitstring> {
    (0..config.lambda).map(|_| Bitstring::random(config.n, rng)).collect()
}

/// λ offspring, each from an independent selection followed by mutation.
pub fn ea_generation<R: Rng + ?Sized>(config: &EaConfig, population: &[Bitstring], rng: &mut R) -> Result<Vec<Bitstring>> {
    config.validate()?;
    if population.len() != config.lambda {
        return Err(Error::domain(format!(
            "population has {} individuals, λ = {}",
            population.len(),
            config.lambda
        )));
    }
    let sampler = ParentSampler::build(config, population, rng)?;
    (0..config.lambda)
        .map(|_| mutate_standard(&population[sampler.sample(rng)], config.pmut, rng))
        .collect()
}

/// One run. `evaluations = λ · generations`; `hit` is set once some
/// individual is the all-ones string.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub generations: u64,
    pub evaluations: u64,
    pub hit: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub best_fitness_trace: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level_trace: Option<Vec<Vec<u64>>>,
}

pub fn ea_run<R: Rng + ?Sized>(config: &EaConfig, cap_generations: u64, rng: &mut R) -> Result<RunRecord> {
    ea_run_traced(config, cap_generations, false, None, rng)
}

/// As [`ea_run`], optionally recording the best true fitness and the level
/// occupancy (with `levels` levels) of every population including the
/// initial one.
pub fn ea_run_traced<R: Rng + ?Sized>(
    config: &EaConfig,
    cap_generations: u64,
    trace_best: bool,
    levels: Option<u64>,
    rng: &mut R,
) -> Result<RunRecord> {
    config.validate()?;
    if cap_generations == 0 {
        return Err(Error::domain("generation cap must be at least 1"));
    }
    let n = config.n as u64;
    let mut best_trace = trace_best.then(Vec::new);
    let mut level_trace = levels.map(|_| Vec::new());
    let mut record = |pop: &[Bitstring]| -> bool {
        let truth: Vec<u64> = pop.iter().map(|x| config.fitness.true_value(x)).collect();
        if let Some(t) = best_trace.as_mut() {
            t.push(truth.iter().copied().max().unwrap_or(0));
        }
        if let (Some(t), Some(m)) = (level_trace.as_mut(), levels) {
            t.push(super::level_occupancy(&truth, m));
        }
        pop.iter().any(|x| x.count_ones() == n)
    };
    let mut pop = initial_population(config, rng);
    let mut hit = record(&pop);
    let mut generations = 0;
    while !hit && generations < cap_generations {
        pop = ea_generation(config, &pop, rng)?;
        generations += 1;
        hit = record(&pop);
    }
    Ok(RunRecord {
        generations,
        evaluations: generations * config.lambda as u64,
        hit,
        best_fitness_trace: best_trace,
        level_trace,
    })
}
