//! Probability checks: the binomial median-type tail, dips, climbs and
//! returns.

use serde::{Deserialize, Serialize};

use super::{check_value, estimate_conditional_probability, estimate_event_probability, Outcome, Verdict};
use crate::binomial;
use crate::bounds::{climb_floor, dip_bound, return_bound, BoundReport};
use crate::error::Result;
use crate::numeric::ceil_snapped;
use crate::process::{self, ProcessSpec};

/// Tolerance for enumerated probability sums.
const SUM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeanTailReport {
    pub checked: u64,
    pub violations: Vec<(u64, f64, f64)>,
    pub min_tail: f64,
    pub argmin: (u64, f64),
}

impl MeanTailReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `{1/k} ∪ {p ∈ grid : p ≥ 1/k}`.
pub fn mean_tail_grid(k: u64, p_grid: &[f64]) -> Vec<f64> {
    let floor = 1.0 / k as f64;
    std::iter::once(floor)
        .chain(p_grid.iter().copied().filter(|&p| p >= floor && p <= 1.0))
        .collect()
}

/// Exact `Pr[Bin(k,p) ≥ kp] ≥ 1/4` for every `k ≤ k_max` and admissible `p`.
/// `kp` within `1e-9` of an integer is taken as that integer.
pub fn mean_tail_exact_check(k_max: u64, p_grid: &[f64]) -> Result<MeanTailReport> {
    let mut report = MeanTailReport {
        checked: 0,
        violations: Vec::new(),
        min_tail: f64::INFINITY,
        argmin: (0, f64::NAN),
    };
    for k in 1..=k_max {
        for p in mean_tail_grid(k, p_grid) {
            let threshold = ceil_snapped(k as f64 * p) as u64;
            let tail = binomial::upper_tail(k, p, threshold)?;
            report.checked += 1;
            if tail < report.min_tail {
                report.min_tail = tail;
                report.argmin = (k, p);
            }
            if tail < 0.25 - SUM_TOL {
                report.violations.push((k, p, tail));
            }
        }
    }
    Ok(report)
}

fn flagged(mut v: Verdict, bound: &BoundReport, spec: &ProcessSpec) -> Verdict {
    v.flags = bound.violated_preconditions.clone();
    v.flags.extend(spec.violated_preconditions());
    v
}

/// Dip frequency from `X = D` against `exp(−δD/169)`.
pub fn dip_probability_check(spec: &ProcessSpec, d: u64, trials: u64, seed: u64) -> Result<Verdict> {
    spec.validate()?;
    let bound = dip_bound(spec.delta, d, spec.target_n);
    let est = estimate_event_probability(|rng| Ok(process::dip_watch(spec, d, rng)?.into()), trials, seed)?;
    Ok(flagged(check_value(bound.bound, &est, bound.direction), &bound, spec))
}

/// In-window climb frequency from `X = D` against
/// `max{0.2782, 1 − 1/(e^{δD/169} − 1)}`.
pub fn climb_success_check(spec: &ProcessSpec, d: u64, trials: u64, seed: u64) -> Result<Verdict> {
    spec.validate()?;
    let bound = climb_floor(spec.delta, d, spec.target_n);
    let est = estimate_event_probability(|rng| Ok(process::climb_watch(spec, d, rng)?.into()), trials, seed)?;
    Ok(flagged(check_value(bound.bound, &est, bound.direction), &bound, spec))
}

/// Frequency of returning to the low threshold among `qualifying` runs
/// that reached the high threshold, against 0.7218 (δ ≤ 1) or
/// `1/(e(e−1))` (δ > 1). At most `100·qualifying` runs are drawn.
pub fn return_probability_check(
    spec: &ProcessSpec,
    qualifying: u64,
    cap: u64,
    seed: u64,
) -> Result<Verdict> {
    spec.validate()?;
    let bound = return_bound(spec.delta, spec.target_n);
    let hi = (bound.auxiliary["hi"] as u64).min(spec.target_n);
    let lo = bound.auxiliary["lo"] as u64;
    let est = estimate_conditional_probability(
        |rng| {
            let rec = process::run_with_return_watch(spec, hi, lo, cap, rng)?;
            Ok(if rec.returned_lo {
                Outcome::Success
            } else if rec.censored {
                Outcome::Censored
            } else if rec.reached_hi {
                Outcome::Failure
            } else {
                Outcome::NotQualifying
            })
        },
        qualifying,
        qualifying.saturating_mul(100),
        seed,
    )?;
    Ok(flagged(check_value(bound.bound, &est, bound.direction), &bound, spec))
}
