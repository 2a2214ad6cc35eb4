//! Selection operators and standard bit mutation.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::{Distribution, Geometric};

use super::Bitstring;
use crate::error::{Error, Result};

/// Fitness-proportionate sampler over a fixed fitness vector, built once
/// per generation. Zero total fitness selects uniformly.
#[derive(Debug, Clone)]
pub struct FpsSampler {
    cumulative: Vec<f64>,
}

impl FpsSampler {
    pub fn new(fitnesses: &[f64]) -> Result<Self> {
        if fitnesses.is_empty() {
            return Err(Error::domain("cannot select from an empty population"));
        }
        let mut acc = 0.0;
        let mut cumulative = Vec::with_capacity(fitnesses.len());
        for &f in fitnesses {
            if !(f >= 0.0 && f.is_finite()) {
                return Err(Error::domain(format!("fitness-proportionate selection needs finite f ≥ 0, got {f}")));
            }
            acc += f;
            cumulative.push(acc);
        }
        Ok(FpsSampler { cumulative })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let total = *self.cumulative.last().expect("nonempty");
        if total == 0.0 {
            return rng.random_range(0..self.cumulative.len());
        }
        let u = rng.random::<f64>() * total;
        // First index whose cumulative mass exceeds u; zero-fitness entries
        // have an empty interval and are never hit.
        self.cumulative
            .partition_point(|&c| c <= u)
            .min(self.cumulative.len() - 1)
    }
}

pub fn select_fitness_proportionate<R: Rng + ?Sized>(fitnesses: &[f64], rng: &mut R) -> Result<usize> {
    Ok(FpsSampler::new(fitnesses)?.sample(rng))
}

/// Two uniform picks with replacement; the fitter wins, ties uniformly.
pub fn select_tournament2<R: Rng + ?Sized>(fitnesses: &[f64], rng: &mut R) -> Result<usize> {
    if fitnesses.is_empty() {
        return Err(Error::domain("cannot select from an empty population"));
    }
    let n = fitnesses.len();
    let (a, b) = (rng.random_range(0..n), rng.random_range(0..n));
    Ok(if fitnesses[a] > fitnesses[b] {
        a
    } else if fitnesses[b] > fitnesses[a] {
        b
    } else if rng.random::<bool>() {
        a
    } else {
        b
    })
}

/// The μ best indices after a uniformly random tie order, from which
/// parents are drawn uniformly.
#[derive(Debug, Clone)]
pub struct RankingSampler {
    pool: Vec<usize>,
}

impl RankingSampler {
    pub fn new<R: Rng + ?Sized>(fitnesses: &[f64], mu: usize, rng: &mut R) -> Result<Self> {
        if mu == 0 || mu > fitnesses.len() {
            return Err(Error::domain(format!(
                "ranking selection needs 1 ≤ μ ≤ {}, got μ = {mu}",
                fitnesses.len()
            )));
        }
        let mut order: Vec<usize> = (0..fitnesses.len()).collect();
        order.shuffle(rng);
        // Stable sort keeps the shuffled order among equal fitnesses.
        order.sort_by(|&a, &b| fitnesses[b].total_cmp(&fitnesses[a]));
        order.truncate(mu);
        Ok(RankingSampler { pool: order })
    }

    pub fn pool(&self) -> &[usize] {
        &self.pool
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        self.pool[rng.random_range(0..self.pool.len())]
    }
}

pub fn select_ranking_mu_comma<R: Rng + ?Sized>(fitnesses: &[f64], mu: usize, rng: &mut R) -> Result<usize> {
    Ok(RankingSampler::new(fitnesses, mu, rng)?.sample(rng))
}

/// Flips each bit independently with probability `pmut`, in place.
/// Positions are generated by geometric skipping, so the cost is
/// proportional to the number of flips.
pub fn mutate_in_place<R: Rng + ?Sized>(x: &mut Bitstring, pmut: f64, rng: &mut R) -> Result<()> {
    crate::binomial::check_probability(pmut, "mutation rate")?;
    if pmut == 0.0 || x.is_empty() {
        return Ok(());
    }
    if pmut == 1.0 {
        *x = x.complement();
        return Ok(());
    }
    let skip = Geometric::new(pmut).map_err(|e| Error::domain(e.to_string()))?;
    let len = x.len() as u64;
    let mut i = skip.sample(rng);
    while i < len {
        x.flip(i as usize);
        i = i.saturating_add(1).saturating_add(skip.sample(rng));
    }
    Ok(())
}

pub fn mutate_standard<R: Rng + ?Sized>(x: &Bitstring, pmut: f64, rng: &mut R) -> Result<Bitstring> {
    let mut y = x.clone();
    mutate_in_place(&mut y, pmut, rng)?;
    Ok(y)
}
