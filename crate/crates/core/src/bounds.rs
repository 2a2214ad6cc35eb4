//! Closed-form run-time and probability bounds.
//!
//! Every calculator returns a [`BoundReport`]. Failed preconditions never
//! raise; they set `valid = false` and are listed by name, so sweeps can
//! chart where a bound applies. Only malformed inputs (for instance a
//! nonpositive `E₀`) are errors.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{ceil_snapped, log0, log_base};

/// Lower bound on the success probability of one climb phase (δ ≤ 1).
pub const CLIMB_FLOOR: f64 = 0.2782;
/// Bound on the probability to fall back to `≤ 50/δ` after reaching `100/δ`.
pub const RETURN_SMALL_DELTA: f64 = 0.7218;
/// Success probability of one phase for δ > 1.
pub const PHASE_LARGE_DELTA: f64 = 0.78;
/// Constant in front of `λ t₀` in the evaluation bound for δ ≤ 1 level models.
pub const C1: f64 = 80_000.0;

/// `1/(e(e−1))`, the return probability bound for δ > 1.
pub fn return_large_delta() -> f64 {
    let e = std::f64::consts::E;
    1.0 / (e * (e - 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    /// Up-drift with a positive process (`thm1`).
    Thm1,
    /// Fluctuation phase of the unbiased process.
    Nodrift,
    /// Up-drift with an absorbing-looking state 0 (`thm2`).
    Thm2,
    /// Up-drift with a fresh-start condition (`thm3`).
    Thm3,
    LevelNew,
    LevelLargeDelta,
    LevelOld,
    AdditiveOvershoot,
    Dip,
    Climb,
    Return,
}

impl TheoremId {
    pub const ALL: [TheoremId; 11] = [
        TheoremId::Thm1,
        TheoremId::Nodrift,
        TheoremId::Thm2,
        TheoremId::Thm3,
        TheoremId::LevelNew,
        TheoremId::LevelLargeDelta,
        TheoremId::LevelOld,
        TheoremId::AdditiveOvershoot,
        TheoremId::Dip,
        TheoremId::Climb,
        TheoremId::Return,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::Thm1 => "thm1",
            TheoremId::Nodrift => "nodrift",
            TheoremId::Thm2 => "thm2",
            TheoremId::Thm3 => "thm3",
            TheoremId::LevelNew => "level-new",
            TheoremId::LevelLargeDelta => "level-large-delta",
            TheoremId::LevelOld => "level-old",
            TheoremId::AdditiveOvershoot => "additive-overshoot",
            TheoremId::Dip => "dip",
            TheoremId::Climb => "climb",
            TheoremId::Return => "return",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        TheoremId::ALL
            .into_iter()
            .find(|id| id.name() == norm)
            .ok_or_else(|| Error::parse(format!("unknown bound `{s}`")))
    }
}

/// What the `bound` field counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Unit {
    Iterations,
    Evaluations,
    Probability,
}

/// Sense of the claim a bound makes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    UpperBoundsMean,
    UpperBoundsProb,
    LowerBoundsProb,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub theorem_id: TheoremId,
    pub unit: Unit,
    pub direction: Direction,
    pub inputs: BTreeMap<String, f64>,
    pub bound: f64,
    pub valid: bool,
    /// The instance is trivial (e.g. `D₀ = 1`); the bound may be 0.
    pub degenerate: bool,
    pub violated_preconditions: Vec<String>,
    pub auxiliary: BTreeMap<String, f64>,
}

impl BoundReport {
    fn new(theorem_id: TheoremId, unit: Unit, direction: Direction) -> Self {
        BoundReport {
            theorem_id,
            unit,
            direction,
            inputs: BTreeMap::new(),
            bound: f64::NAN,
            valid: true,
            degenerate: false,
            violated_preconditions: Vec::new(),
            auxiliary: BTreeMap::new(),
        }
    }

    fn input(mut self, key: &str, v: f64) -> Self {
        self.inputs.insert(key.to_string(), v);
        self
    }

    fn aux(&mut self, key: &str, v: f64) {
        self.auxiliary.insert(key.to_string(), v);
    }

    fn require(&mut self, ok: bool, name: &str) {
        if !ok {
            self.violated_preconditions.push(name.to_string());
        }
    }

    fn finish(mut self, bound: f64) -> Self {
        self.bound = bound;
        if !bound.is_finite() && !self.violated_preconditions.iter().any(|v| v == "finite bound") {
            self.violated_preconditions.push("finite bound".to_string());
        }
        self.valid = self.violated_preconditions.is_empty();
        self
    }
}

fn first_updrift_remainder(delta: f64, n: u64, gamma0: f64) -> (f64, u64) {
    if delta <= 1.0 {
        let d0 = crate::process::d0(delta, n);
        let d = d0 as f64;
        let b = 21.6 / (1.0 - gamma0) * d * (2.0 * d).ln()
            + 3.6 * (n as f64).log2() * ceil_snapped(3.0 / delta);
        (b, d0)
    } else {
        (2.6 * log_base(n as f64, 1.0 + delta) + 81.0, 32u64.min(n))
    }
}

fn check_updrift_common(r: &mut BoundReport, delta: f64, n: u64, gamma0: f64, k: u64) {
    r.require(delta.is_finite() && delta > 0.0, "delta > 0");
    r.require(n >= 1, "n >= 1");
    r.require(k >= 1, "k >= 1");
    r.require(gamma0 < 1.0, "gamma0 < 1");
    let n1 = n.saturating_sub(1) as f64;
    r.require(n1 <= gamma0 * k as f64, "n-1 <= gamma0*k");
    r.require(n1 <= k as f64 / (1.0 + delta), "n-1 <= k/(1+delta)");
    if n <= 1 {
        r.degenerate = true;
    }
}

fn return_constant(r: &mut BoundReport, delta: f64, n: u64) {
    if delta <= 1.0 {
        if n as f64 > 100.0 / delta {
            r.aux("return_probability", RETURN_SMALL_DELTA);
        }
    } else if n > 32 {
        r.aux("return_probability", return_large_delta());
    }
}

/// Expected hitting time of `n` for a positive process dominating
/// `Bin(k, (1+δ)x/k)`, in iterations.
pub fn thm1_bound(delta: f64, n: u64, gamma0: f64, k: u64) -> BoundReport {
    let mut r = BoundReport::new(TheoremId::Thm1, Unit::Iterations, Direction::UpperBoundsMean)
        .input("delta", delta)
        .input("n", n as f64)
        .input("gamma0", gamma0)
        .input("k", k as f64);
    check_updrift_common(&mut r, delta, n, gamma0, k);
    let (b, d0) = first_updrift_remainder(delta, n, gamma0);
    r.aux("d0", d0 as f64);
    return_constant(&mut r, delta, n);
    r.finish(b)
}

/// Expected time for the unbiased process to climb from 1 to `D₀`:
/// `6 D₀ ln(2D₀)/(1−γ₀)`. Pass `k` to also check `D₀ − 1 ≤ γ₀ k`.
pub fn nodrift_bound(d0: u64, gamma0: f64, k: Option<u64>) -> BoundReport {
    let mut r = BoundReport::new(TheoremId::Nodrift, Unit::Iterations, Direction::UpperBoundsMean)
        .input("d0", d0 as f64)
        .input("gamma0", gamma0);
    r.require(d0 >= 1, "d0 >= 1");
    r.require((0.0..1.0).contains(&gamma0), "0 <= gamma0 < 1");
    if let Some(k) = k {
        r.inputs.insert("k".into(), k as f64);
        r.require(d0.saturating_sub(1) as f64 <= gamma0 * k as f64, "d0-1 <= gamma0*k");
    }
    if d0 == 1 {
        r.degenerate = true;
        return r.finish(0.0);
    }
    let d = d0 as f64;
    r.finish(6.0 * d * (2.0 * d).ln() / (1.0 - gamma0))
}

/// Additive drift with overshooting: `(E[X_T] − X₀)/drift`.
pub fn additive_overshoot_bound(x0: f64, expected_final: f64, drift: f64) -> Result<f64> {
    if !(drift > 0.0) || !drift.is_finite() {
        return Err(Error::domain(format!("drift must be positive, got {drift}")));
    }
    let gap = expected_final - x0;
    if !(gap >= 0.0) {
        return Err(Error::domain(format!("expected final value {expected_final} lies below x0 = {x0}")));
    }
    Ok(gap / drift)
}

/// [`additive_overshoot_bound`] as a report.
pub fn additive_overshoot_report(x0: f64, expected_final: f64, drift: f64) -> Result<BoundReport> {
    let bound = additive_overshoot_bound(x0, expected_final, drift)?;
    Ok(BoundReport::new(TheoremId::AdditiveOvershoot, Unit::Iterations, Direction::UpperBoundsMean)
        .input("x0", x0)
        .input("expected_final", expected_final)
        .input("drift", drift)
        .finish(bound))
}

/// Expected hitting time when state 0 is left with
/// `E[min{X', D₀}] ≥ E₀`, in iterations.
pub fn thm2_bound(delta: f64, n: u64, gamma0: f64, k: u64, e0: f64) -> Result<BoundReport> {
    if !(e0 > 0.0) {
        return Err(Error::domain(format!("E0 must be positive, got {e0}")));
    }
    let mut r = BoundReport::new(TheoremId::Thm2, Unit::Iterations, Direction::UpperBoundsMean)
        .input("delta", delta)
        .input("n", n as f64)
        .input("gamma0", gamma0)
        .input("k", k as f64)
        .input("e0", e0);
    check_updrift_common(&mut r, delta, n, gamma0, k);
    let (rest, d0) = first_updrift_remainder(delta, n, gamma0);
    let zero_cost = if delta <= 1.0 {
        4.0 * d0 as f64 / (CLIMB_FLOOR * e0)
    } else {
        128.0 / (PHASE_LARGE_DELTA * e0)
    };
    r.aux("d0", d0 as f64);
    r.aux("zero_state_cost", zero_cost);
    Ok(r.finish(zero_cost + rest))
}

/// Expected hitting time under the fresh-start condition
/// `Pr[X' ≥ xmin] ≥ p`, in iterations.
pub fn thm3_bound(delta: f64, n: u64, k: u64, xmin: u64, p: f64) -> BoundReport {
    let mut r = BoundReport::new(TheoremId::Thm3, Unit::Iterations, Direction::UpperBoundsMean)
        .input("delta", delta)
        .input("n", n as f64)
        .input("k", k as f64)
        .input("xmin", xmin as f64)
        .input("p", p);
    r.require(delta.is_finite() && delta > 0.0, "delta > 0");
    r.require(p > 0.0 && p <= 1.0, "0 < p <= 1");
    r.require(n.saturating_sub(1) as f64 <= k as f64 / (1.0 + delta), "n-1 <= k/(1+delta)");
    let d0 = crate::process::fresh_start_d0(delta, n);
    r.aux("d0", d0);
    r.require(xmin as f64 >= d0, "xmin >= D0");
    let ratio = n as f64 / xmin as f64;
    let b = if delta <= 1.0 {
        3.6 * (1.0 / p + ceil_snapped(log0(ratio, 2.0)) * ceil_snapped(3.0 / delta))
    } else {
        1.3 / p + 2.6 * ceil_snapped(log0(ratio, 1.0 + delta))
    };
    r.finish(b)
}

/// Probability that, started at `D`, the process dips to
/// `D/2 + sδD/2` within `⌈3/δ⌉` steps before doubling: `exp(−δD/169)`.
pub fn dip_bound(delta: f64, d: u64, n: u64) -> BoundReport {
    let mut r = BoundReport::new(TheoremId::Dip, Unit::Probability, Direction::UpperBoundsProb)
        .input("delta", delta)
        .input("d", d as f64)
        .input("n", n as f64);
    r.require(delta > 0.0 && delta <= 1.0, "0 < delta <= 1");
    r.require(d as f64 >= 100.0 / delta, "D >= 100/delta");
    r.require(d < n, "D < n");
    r.finish((-delta * d as f64 / 169.0).exp())
}

/// Floor on reaching `n` from `D` within `⌈log₂(n/D)⌉⌈3/δ⌉` steps:
/// `max{0.2782, 1 − 1/(e^{δD/169} − 1)}`.
pub fn climb_floor(delta: f64, d: u64, n: u64) -> BoundReport {
    let mut r = BoundReport::new(TheoremId::Climb, Unit::Probability, Direction::LowerBoundsProb)
        .input("delta", delta)
        .input("d", d as f64)
        .input("n", n as f64);
    r.require(delta > 0.0 && delta <= 1.0, "0 < delta <= 1");
    r.require(d as f64 >= 100.0 / delta, "D >= 100/delta");
    r.aux("window", crate::process::climb_window(delta, n, d) as f64);
    if d >= n {
        r.degenerate = true;
        return r.finish(1.0);
    }
    let tail = 1.0 - 1.0 / ((delta * d as f64 / 169.0).exp() - 1.0);
    r.finish(CLIMB_FLOOR.max(tail))
}

/// Probability of ever falling back to the low threshold after reaching
/// the high one, with the thresholds the bound refers to.
pub fn return_bound(delta: f64, n: u64) -> BoundReport {
    let mut r = BoundReport::new(TheoremId::Return, Unit::Probability, Direction::UpperBoundsProb)
        .input("delta", delta)
        .input("n", n as f64);
    r.require(delta.is_finite() && delta > 0.0, "delta > 0");
    let (hi, lo) = return_thresholds(delta);
    r.aux("hi", hi as f64);
    r.aux("lo", lo as f64);
    if delta <= 1.0 {
        r.require(n as f64 > 100.0 / delta, "n > 100/delta");
        r.finish(RETURN_SMALL_DELTA)
    } else {
        r.require(n > 32, "n > 32");
        r.finish(return_large_delta())
    }
}

/// `(⌈100/δ⌉, ⌊50/δ⌋)` for δ ≤ 1 and `(32, 31)` for δ > 1.
pub fn return_thresholds(delta: f64) -> (u64, u64) {
    if delta <= 1.0 {
        (
            ceil_snapped(100.0 / delta) as u64,
            (50.0 / delta + 1e-9).floor() as u64,
        )
    } else {
        (32, 31)
    }
}

/// Level partition data for the level-based bounds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelModel {
    /// Number of levels.
    pub m: u64,
    /// Upgrade probabilities `z₁..z_{m−1}`.
    pub z: Vec<f64>,
    pub delta: f64,
    pub gamma0: f64,
    pub lambda: u64,
}

impl LevelModel {
    fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::domain("a level model needs m ≥ 1"));
        }
        if self.z.len() as u64 != self.m - 1 {
            return Err(Error::domain(format!(
                "expected m-1 = {} upgrade probabilities, got {}",
                self.m - 1,
                self.z.len()
            )));
        }
        if self.lambda == 0 {
            return Err(Error::domain("population size must be at least 1"));
        }
        Ok(())
    }

    pub fn gamma0_lambda(&self) -> f64 {
        self.gamma0 * self.lambda as f64
    }

    fn common_flags(&self, r: &mut BoundReport) {
        r.require(self.gamma0 > 0.0 && self.gamma0 < 1.0, "0 < gamma0 < 1");
        r.require(self.gamma0 <= 1.0 / (1.0 + self.delta) + 1e-12, "gamma0 <= 1/(1+delta)");
        let gl = self.gamma0_lambda();
        r.require((gl - gl.round()).abs() <= 1e-9 * gl.max(1.0), "gamma0*lambda integral");
        r.require(self.z.iter().all(|&z| z > 0.0 && z <= 1.0), "z_j in (0,1]");
    }

    fn report(&self, id: TheoremId) -> BoundReport {
        let mut r = BoundReport::new(id, Unit::Evaluations, Direction::UpperBoundsMean)
            .input("m", self.m as f64)
            .input("delta", self.delta)
            .input("gamma0", self.gamma0)
            .input("lambda", self.lambda as f64);
        for (j, z) in self.z.iter().enumerate() {
            r.inputs.insert(format!("z_{:03}", j + 1), *z);
        }
        r
    }

    /// `min{⌈100/δ⌉, γ₀λ}` for δ ≤ 1, `min{32, γ₀λ}` otherwise.
    pub fn d0(&self) -> f64 {
        let gl = self.gamma0_lambda();
        if self.delta <= 1.0 {
            ceil_snapped(100.0 / self.delta).min(gl)
        } else {
            32f64.min(gl)
        }
    }

    fn level_log_sum(&self, base: f64) -> f64 {
        let gl = self.gamma0_lambda();
        let d0 = self.d0();
        let lambda = self.lambda as f64;
        crate::numeric::compensated_sum(
            self.z
                .iter()
                .map(|z| log0(2.0 * gl / (1.0 + z * lambda / d0), base)),
        )
    }

    fn inverse_sum(&self) -> f64 {
        crate::numeric::compensated_sum(self.z.iter().map(|z| 1.0 / z))
    }

    /// `t₀` of the δ ≤ 1 level bound.
    pub fn t0_new(&self) -> f64 {
        let inner = self.m as f64
            + self.level_log_sum(2.0) / (1.0 - self.gamma0)
            + self.inverse_sum() / self.lambda as f64;
        1e4 / self.delta * inner
    }

    /// `t₀` of the δ > 1 level bound.
    pub fn t0_large_delta(&self) -> f64 {
        101.6 * self.m as f64
            + 2.6 * self.level_log_sum(1.0 + self.delta)
            + 657.0 / self.lambda as f64 * self.inverse_sum()
    }

    fn with_lambda(&self, lambda: u64) -> LevelModel {
        LevelModel {
            lambda,
            ..self.clone()
        }
    }
}

/// Evaluations until some individual reaches the top level, δ ≤ 1:
/// `8λt₀` with `t₀ = (10⁴/δ)(m + …)`, under `λ ≥ 338/(γ₀δ) ln(8t₀)`.
pub fn level_new_bound(model: &LevelModel) -> Result<BoundReport> {
    model.validate()?;
    let mut r = model.report(TheoremId::LevelNew);
    model.common_flags(&mut r);
    r.require(model.delta > 0.0 && model.delta <= 1.0, "0 < delta <= 1");
    let t0 = model.t0_new();
    let lambda_min = 338.0 / (model.gamma0 * model.delta) * (8.0 * t0).ln();
    r.aux("d0", model.d0());
    r.aux("t0", t0);
    r.aux("lambda_min", lambda_min);
    r.aux("c1", C1);
    r.require(model.lambda as f64 >= lambda_min, "lambda >= lambda_min");
    Ok(r.finish(8.0 * model.lambda as f64 * t0))
}

/// Evaluations until some individual reaches the top level, δ > 1:
/// `9λt₀` under `γ₀λ ≥ 32` and `λ ≥ (4/γ₀) ln(9t₀)`.
pub fn level_large_delta_bound(model: &LevelModel) -> Result<BoundReport> {
    model.validate()?;
    let mut r = model.report(TheoremId::LevelLargeDelta);
    model.common_flags(&mut r);
    r.require(model.delta > 1.0, "delta > 1");
    r.require(model.gamma0_lambda() >= 32.0 - 1e-9, "gamma0*lambda >= 32");
    let t0 = model.t0_large_delta();
    let lambda_min = 4.0 / model.gamma0 * (9.0 * t0).ln();
    r.aux("d0", model.d0());
    r.aux("t0", t0);
    r.aux("lambda_min", lambda_min);
    r.require(model.lambda as f64 >= lambda_min, "lambda >= lambda_min");
    Ok(r.finish(9.0 * model.lambda as f64 * t0))
}

/// The earlier level-based bound, kept for comparison:
/// `8(λ/δ²) Σ (ln(6δλ/(4 + z_jδλ)) + 1/(λz_j))`.
pub fn level_old_bound(model: &LevelModel) -> Result<BoundReport> {
    model.validate()?;
    let mut r = model.report(TheoremId::LevelOld);
    let (delta, lambda) = (model.delta, model.lambda as f64);
    r.require(delta > 0.0 && delta <= 1.0, "0 < delta <= 1");
    r.require(model.gamma0 > 0.0 && model.gamma0 < 1.0, "0 < gamma0 < 1");
    r.require(model.z.iter().all(|&z| z > 0.0 && z <= 1.0), "z_j in (0,1]");
    let sum = crate::numeric::compensated_sum(
        model
            .z
            .iter()
            .map(|z| (6.0 * delta * lambda / (4.0 + z * delta * lambda)).ln() + 1.0 / (lambda * z)),
    );
    let z_star = model.z.iter().copied().fold(f64::INFINITY, f64::min);
    let lambda_min = if z_star.is_finite() {
        4.0 / (model.gamma0 * delta * delta) * (128.0 * model.m as f64 / (z_star * delta * delta)).ln()
    } else {
        0.0
    };
    r.aux("lambda_min", lambda_min);
    r.require(lambda >= lambda_min, "lambda >= lambda_min");
    Ok(r.finish(8.0 * lambda / (delta * delta) * sum))
}

/// Result of the λ fixed-point search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LambdaSuggestion {
    pub lambda: u64,
    pub lambda_min: f64,
    pub iterations: u32,
    pub converged: bool,
}

/// Smallest `λ' ≥ x` with `γ₀λ'` integral, if one exists within reach.
fn admissible_lambda(x: f64, gamma0: f64) -> u64 {
    let start = x.max(1.0).ceil() as u64;
    for lambda in start..start + 100_000 {
        let gl = gamma0 * lambda as f64;
        if (gl - gl.round()).abs() <= 1e-9 * gl.max(1.0) {
            return lambda;
        }
    }
    start
}

/// Iterates `λ ↦ λ_min(λ)` (rounded up so that `γ₀λ` stays integral) at
/// most 100 times, starting from the model's λ, until `λ ≥ λ_min(λ)`.
///
/// `bound` selects the level calculator; it must be one of the three level
/// bounds.
pub fn suggest_lambda(model: &LevelModel, bound: TheoremId) -> Result<LambdaSuggestion> {
    let calc: fn(&LevelModel) -> Result<BoundReport> = match bound {
        TheoremId::LevelNew => level_new_bound,
        TheoremId::LevelLargeDelta => level_large_delta_bound,
        TheoremId::LevelOld => level_old_bound,
        other => return Err(Error::domain(format!("{other} is not a level bound"))),
    };
    let floor = if bound == TheoremId::LevelLargeDelta {
        32.0 / model.gamma0
    } else {
        1.0
    };
    let mut lambda = admissible_lambda((model.lambda as f64).max(floor), model.gamma0);
    let mut lambda_min = f64::NAN;
    for it in 1..=100 {
        let r = calc(&model.with_lambda(lambda))?;
        lambda_min = r.auxiliary["lambda_min"];
        if lambda as f64 >= lambda_min {
            return Ok(LambdaSuggestion {
                lambda,
                lambda_min,
                iterations: it,
                converged: true,
            });
        }
        lambda = admissible_lambda(lambda_min.max(floor), model.gamma0);
    }
    Ok(LambdaSuggestion {
        lambda,
        lambda_min,
        iterations: 100,
        converged: false,
    })
}
