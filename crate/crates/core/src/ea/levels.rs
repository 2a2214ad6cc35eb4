use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::engine::ParentSampler;
use super::{mutate_standard, Bitstring, EaConfig, FitnessKind};
use crate::error::{Error, Result};
use crate::stats::{wilson_interval, Z95};

/// Cumulative occupancy: entry `j−1` counts individuals with fitness
/// `≥ j−1`, i.e. in `A_{≥j}` for the fitness-level partition, `j = 1..m`.
pub fn level_occupancy(fitness: &[u64], m: u64) -> Vec<u64> {
    let mut hist = vec![0u64; m as usize];
    for &f in fitness {
        if let Some(slot) = hist.get_mut(f.min(m.saturating_sub(1)) as usize) {
            *slot += 1;
        }
    }
    let mut acc = 0;
    for slot in hist.iter_mut().rev() {
        acc += *slot;
        *slot = acc;
    }
    hist
}

/// A random string of length `n` with true fitness exactly `f`.
pub fn individual_with_fitness<R: Rng + ?Sized>(kind: &FitnessKind, n: usize, f: u64, rng: &mut R) -> Result<Bitstring> {
    if f > n as u64 {
        return Err(Error::domain(format!("fitness {f} exceeds n = {n}")));
    }
    let f = f as usize;
    let mut x = Bitstring::zeros(n);
    match kind {
        FitnessKind::LeadingOnes => {
            for i in 0..f {
                x.set(i, true);
            }
            for i in f + 1..n {
                x.set(i, rng.random());
            }
        }
        FitnessKind::OneMax | FitnessKind::OneMaxPartial { .. } => {
            for i in sample(rng, n, f) {
                x.set(i, true);
            }
        }
    }
    Ok(x)
}

/// Population built from `(count, fitness)` groups.
pub fn construct_population<R: Rng + ?Sized>(
    kind: &FitnessKind,
    n: usize,
    groups: &[(usize, u64)],
    rng: &mut R,
) -> Result<Vec<Bitstring>> {
    let mut pop = Vec::new();
    for &(count, f) in groups {
        for _ in 0..count {
            pop.push(individual_with_fitness(kind, n, f, rng)?);
        }
    }
    if pop.is_empty() {
        return Err(Error::domain("constructed population is empty"));
    }
    Ok(pop)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelEstimate {
    /// Offspring are counted when their true fitness is at least `j`.
    pub j: u64,
    pub samples: u64,
    pub successes: u64,
    pub estimate: f64,
    pub ci95: (f64, f64),
}

/// Monte Carlo estimate of `Pr_{y∼D(P)}[f(y) ≥ j]`.
///
/// Parents are re-evaluated once per batch of `|P|` offspring, mirroring
/// one generation, so noisy fitness is resampled as in a real run.
pub fn estimate_level_params<R: Rng + ?Sized>(
    config: &EaConfig,
    population: &[Bitstring],
    j: u64,
    samples: u64,
    rng: &mut R,
) -> Result<LevelEstimate> {
    if samples == 0 {
        return Err(Error::domain("at least one sample is required"));
    }
    if population.is_empty() {
        return Err(Error::domain("population is empty"));
    }
    let config = EaConfig {
        lambda: population.len(),
        mu: config.mu.map(|mu| mu.min(population.len())),
        ..config.clone()
    };
    config.validate()?;
    let mut successes = 0u64;
    let mut drawn = 0u64;
    while drawn < samples {
        let sampler = ParentSampler::build(&config, population, rng)?;
        let batch = (samples - drawn).min(population.len() as u64);
        for _ in 0..batch {
            let child = mutate_standard(&population[sampler.sample(rng)], config.pmut, rng)?;
            if config.fitness.true_value(&child) >= j {
                successes += 1;
            }
        }
        drawn += batch;
    }
    Ok(LevelEstimate {
        j,
        samples,
        successes,
        estimate: successes as f64 / samples as f64,
        ci95: wilson_interval(successes, samples, Z95),
    })
}
