//! Monte Carlo estimation, exact oracles and bound verdicts.

mod checks;
mod markov;

pub use checks::{
    climb_success_check, dip_probability_check, mean_tail_exact_check, mean_tail_grid, return_probability_check,
    MeanTailReport,
};
pub use markov::{exact_hitting_time_markov, MARKOV_STATE_LIMIT};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{BoundReport, Direction};
use crate::error::{Error, Result};
use crate::process::{self, ProcessSpec};
use crate::rng::{trial_rng, SimRng};
use crate::stats::{mean_stderr, wilson_interval, Z95};

/// Width, in standard errors, of the slack granted to empirical estimates.
pub const MARGIN_SE: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Estimand {
    Mean,
    Proportion,
}

/// Aggregate of independent trials.
///
/// For means, `mean`/`stderr` cover uncensored trials only and `censored`
/// counts the rest. For proportions, `trials` counts qualifying trials,
/// `excluded` those that did not qualify, and `ci95` is a Wilson interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloSummary {
    pub estimand: Estimand,
    pub trials: u64,
    pub mean: f64,
    pub stderr: f64,
    pub ci95: (f64, f64),
    pub censored: u64,
    pub excluded: u64,
    pub successes: u64,
    pub seed: u64,
    pub all_censored: bool,
}

impl MonteCarloSummary {
    /// Summary of hitting times; `None` entries are censored.
    pub fn from_times(times: &[Option<u64>], seed: u64) -> Self {
        let hits: Vec<f64> = times.iter().flatten().map(|&t| t as f64).collect();
        let censored = (times.len() - hits.len()) as u64;
        let (mean, stderr) = mean_stderr(&hits);
        MonteCarloSummary {
            estimand: Estimand::Mean,
            trials: times.len() as u64,
            mean,
            stderr,
            ci95: (mean - Z95 * stderr, mean + Z95 * stderr),
            censored,
            excluded: 0,
            successes: hits.len() as u64,
            seed,
            all_censored: hits.is_empty(),
        }
    }

    /// Summary of a proportion over `trials` qualifying trials.
    pub fn from_counts(successes: u64, trials: u64, excluded: u64, censored: u64, seed: u64) -> Self {
        let p = if trials == 0 { f64::NAN } else { successes as f64 / trials as f64 };
        let stderr = if trials == 0 { f64::NAN } else { (p * (1.0 - p) / trials as f64).sqrt() };
        MonteCarloSummary {
            estimand: Estimand::Proportion,
            trials,
            mean: p,
            stderr,
            ci95: wilson_interval(successes, trials, Z95),
            censored,
            excluded,
            successes,
            seed,
            all_censored: trials == 0,
        }
    }
}

fn check_trials(trials: u64) -> Result<()> {
    if trials == 0 {
        Err(Error::domain("at least one trial is required"))
    } else {
        Ok(())
    }
}

/// Runs `f` on trials `range` in parallel, each on its own stream, and
/// returns results in index order.
pub fn run_trials<T, F>(range: std::ops::Range<u64>, seed: u64, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&mut SimRng) -> Result<T> + Sync,
{
    range
        .into_par_iter()
        .map(|i| f(&mut trial_rng(seed, i)))
        .collect()
}

/// Monte Carlo estimate of `E[T]`.
pub fn estimate_hitting_time(spec: &ProcessSpec, trials: u64, cap: u64, seed: u64) -> Result<MonteCarloSummary> {
    check_trials(trials)?;
    spec.validate()?;
    let times = run_trials(0..trials, seed, |rng| process::hitting_time(spec, cap, rng))?;
    Ok(MonteCarloSummary::from_times(&times, seed))
}

/// Outcome of one trial of a conditional event.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Failure,
    /// The trial does not meet the conditioning event.
    NotQualifying,
    /// The step cap ended the trial before it could be classified.
    Censored,
}

impl From<bool> for Outcome {
    fn from(b: bool) -> Self {
        if b {
            Outcome::Success
        } else {
            Outcome::Failure
        }
    }
}

/// Frequency of `event` over `trials` trials (all of which must qualify
/// for the count to reach `trials`).
pub fn estimate_event_probability<F>(event: F, trials: u64, seed: u64) -> Result<MonteCarloSummary>
where
    F: Fn(&mut SimRng) -> Result<Outcome> + Sync,
{
    estimate_conditional_probability(event, trials, trials, seed)
}

/// Frequency of success among the first `qualifying` qualifying trials,
/// drawing at most `max_attempts` trials. Trials are drawn in index order
/// in parallel batches, so the result does not depend on thread count.
pub fn estimate_conditional_probability<F>(
    event: F,
    qualifying: u64,
    max_attempts: u64,
    seed: u64,
) -> Result<MonteCarloSummary>
where
    F: Fn(&mut SimRng) -> Result<Outcome> + Sync,
{
    check_trials(qualifying)?;
    let (mut successes, mut counted, mut excluded, mut censored) = (0u64, 0u64, 0u64, 0u64);
    let mut next = 0u64;
    'outer: while counted < qualifying && next < max_attempts {
        let batch = (qualifying - counted).max(64).min(max_attempts - next);
        let outcomes = run_trials(next..next + batch, seed, &event)?;
        next += batch;
        for o in outcomes {
            match o {
                Outcome::Success => {
                    successes += 1;
                    counted += 1;
                }
                Outcome::Failure => counted += 1,
                Outcome::NotQualifying => excluded += 1,
                Outcome::Censored => censored += 1,
            }
            if counted == qualifying {
                break 'outer;
            }
        }
    }
    Ok(MonteCarloSummary::from_counts(successes, counted, excluded, censored, seed))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictStatus {
    Consistent,
    Inconsistent,
    Withheld,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub bound: f64,
    pub direction: Direction,
    pub empirical: MonteCarloSummary,
    pub status: VerdictStatus,
    pub consistent: bool,
    /// Distance from the `3·stderr`-adjusted estimate to the bound; positive
    /// when consistent.
    pub margin: f64,
    /// Failed preconditions of the bound or the process (informational).
    pub flags: Vec<String>,
    pub reason: Option<String>,
}

/// Compares an estimate with a raw bound value.
pub fn check_value(bound: f64, empirical: &MonteCarloSummary, direction: Direction) -> Verdict {
    let mut v = Verdict {
        bound,
        direction,
        empirical: empirical.clone(),
        status: VerdictStatus::Withheld,
        consistent: false,
        margin: f64::NAN,
        flags: Vec::new(),
        reason: None,
    };
    if empirical.all_censored || empirical.trials == 0 {
        v.reason = Some("no uncensored or qualifying trials".into());
        return v;
    }
    if direction == Direction::UpperBoundsMean && empirical.censored > 0 {
        v.reason = Some(format!(
            "{} of {} trials censored; a mean over the rest would be biased low",
            empirical.censored, empirical.trials
        ));
        return v;
    }
    let slack = MARGIN_SE * empirical.stderr;
    v.margin = match direction {
        Direction::UpperBoundsMean | Direction::UpperBoundsProb => bound - (empirical.mean - slack),
        Direction::LowerBoundsProb => empirical.mean + slack - bound,
    };
    v.consistent = v.margin >= 0.0;
    v.status = if v.consistent {
        VerdictStatus::Consistent
    } else {
        VerdictStatus::Inconsistent
    };
    v
}

/// Verdict of `empirical` against a valid bound report. Invalid reports
/// are refused with the violated preconditions as reason.
pub fn check_theorem(bound: &BoundReport, empirical: &MonteCarloSummary, direction: Direction) -> Result<Verdict> {
    if !bound.valid {
        return Err(Error::domain(format!(
            "refusing to check {}: violated preconditions [{}]",
            bound.theorem_id,
            bound.violated_preconditions.join(", ")
        )));
    }
    Ok(check_value(bound.bound, empirical, direction))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::thm1_bound;
    use rand::Rng;

    fn summary(mean: f64, stderr: f64) -> MonteCarloSummary {
        MonteCarloSummary {
            estimand: Estimand::Mean,
            trials: 100,
            mean,
            stderr,
            ci95: (mean - 2.0 * stderr, mean + 2.0 * stderr),
            censored: 0,
            excluded: 0,
            successes: 100,
            seed: 0,
            all_censored: false,
        }
    }

    #[test]
    fn deterministic_mean_is_exact() {
        let s = estimate_hitting_time(&ProcessSpec::deterministic(1.0, 8), 50, 100, 1).unwrap();
        assert_eq!((s.mean, s.stderr, s.censored), (3.0, 0.0, 0));
    }

    #[test]
    fn all_censored_is_explicit() {
        let spec = ProcessSpec::jackpot(1e-9, 1000);
        let s = estimate_hitting_time(&spec, 10, 2, 1).unwrap();
        assert!(s.all_censored && s.censored == 10);
        let v = check_value(100.0, &s, Direction::UpperBoundsMean);
        assert_eq!(v.status, VerdictStatus::Withheld);
        assert!(estimate_hitting_time(&spec, 0, 2, 1).is_err());
    }

    #[test]
    fn verdict_examples() {
        let ok = check_value(100.0, &summary(40.0, 1.0), Direction::UpperBoundsMean);
        assert!(ok.consistent && ok.status == VerdictStatus::Consistent);
        let bad = check_value(100.0, &summary(200.0, 1.0), Direction::UpperBoundsMean);
        assert!(!bad.consistent && bad.status == VerdictStatus::Inconsistent);
        let mut climb = summary(0.35, 0.01);
        climb.estimand = Estimand::Proportion;
        assert!(check_value(0.2782, &climb, Direction::LowerBoundsProb).consistent);
        let mut cens = summary(40.0, 1.0);
        cens.censored = 1;
        assert_eq!(check_value(100.0, &cens, Direction::UpperBoundsMean).status, VerdictStatus::Withheld);
    }

    #[test]
    fn invalid_bound_is_refused() {
        let r = thm1_bound(1.0, 1000, 0.5, 400);
        let err = check_theorem(&r, &summary(1.0, 0.0), Direction::UpperBoundsMean).unwrap_err();
        assert!(err.to_string().contains("n-1 <= gamma0*k"));
    }

    #[test]
    fn fair_coin_and_jackpot_step() {
        let coin = estimate_event_probability(|rng| Ok(rng.random_bool(0.5).into()), 100_000, 5).unwrap();
        assert!(coin.ci95.0 <= 0.5 && 0.5 <= coin.ci95.1, "{coin:?}");
        let spec = ProcessSpec::jackpot(0.5, 11);
        let jump = estimate_event_probability(
            |rng| Ok((process::step(&spec, 1, rng)? == 11).into()),
            100_000,
            6,
        )
        .unwrap();
        assert!(jump.ci95.0 <= 0.05 && 0.05 <= jump.ci95.1, "{jump:?}");
    }

    #[test]
    fn conditional_estimates_skip_nonqualifying() {
        let s = estimate_conditional_probability(
            |rng| {
                Ok(match rng.random_range(0..3) {
                    0 => Outcome::NotQualifying,
                    1 => Outcome::Success,
                    _ => Outcome::Failure,
                })
            },
            1000,
            100_000,
            9,
        )
        .unwrap();
        assert_eq!(s.trials, 1000);
        assert!(s.excluded > 300);
    }

    #[test]
    fn summaries_are_seed_deterministic() {
        let spec = ProcessSpec::clamped(40, 0.5, 10, 0.5);
        let a = estimate_hitting_time(&spec, 500, 10_000, 11).unwrap();
        let b = estimate_hitting_time(&spec, 500, 10_000, 11).unwrap();
        assert_eq!(a, b);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let c = pool.install(|| estimate_hitting_time(&spec, 500, 10_000, 11).unwrap());
        assert_eq!(a, c);
    }
}
