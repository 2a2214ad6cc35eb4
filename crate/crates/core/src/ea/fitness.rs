use rand::Rng;
use serde::{Deserialize, Serialize};

use super::Bitstring;
use crate::binomial;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FitnessKind {
    OneMax,
    LeadingOnes,
    /// OneMax seen through a fresh Bernoulli(`c`) mask on every evaluation.
    OneMaxPartial { c: f64 },
}

impl FitnessKind {
    /// Noise-free fitness, used for levels and the optimum test.
    pub fn true_value(&self, x: &Bitstring) -> u64 {
        match self {
            FitnessKind::LeadingOnes => leadingones(x),
            FitnessKind::OneMax | FitnessKind::OneMaxPartial { .. } => onemax(x),
        }
    }

    /// Fitness as seen by selection.
    pub fn evaluate<R: Rng + ?Sized>(&self, x: &Bitstring, rng: &mut R) -> Result<u64> {
        match self {
            FitnessKind::OneMaxPartial { c } => onemax_partial(x, *c, rng),
            other => Ok(other.true_value(x)),
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if let FitnessKind::OneMaxPartial { c } = self {
            check_partial_c(*c, n)?;
        }
        Ok(())
    }
}

pub fn onemax(x: &Bitstring) -> u64 {
    x.count_ones()
}

pub fn leadingones(x: &Bitstring) -> u64 {
    x.leading_ones()
}

fn check_partial_c(c: f64, n: usize) -> Result<()> {
    if c.is_finite() && c > 1.0 / n as f64 && c <= 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("partial evaluation needs 1/n < c ≤ 1, got c = {c} with n = {n}")))
    }
}

/// `Σ R_i x_i` with a fresh i.i.d. Bernoulli(`c`) mask.
///
/// Only the ones of `x` contribute, so the sum is drawn directly as
/// `Bin(|x|₁, c)`, which has the same law as masking bit by bit.
pub fn onemax_partial<R: Rng + ?Sized>(x: &Bitstring, c: f64, rng: &mut R) -> Result<u64> {
    check_partial_c(c, x.len())?;
    binomial::sample(x.count_ones(), c, rng)
}
