//! Up-drift processes: specification, single steps and trajectory runners.
//!
//! All runners are pure functions of the spec and the random stream they are
//! handed. The deterministic process keeps a real-valued track `(1+δ)^t · x₀`
//! and only discretises it (by flooring) for recording, so its hitting time
//! equals `⌈log_{1+δ}(n/x₀)⌉` without per-step rounding drift.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::binomial;
use crate::error::{Error, Result};
use crate::numeric::{ceil_snapped, log_base};

/// Default step cap for trajectory runs.
pub const DEFAULT_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProcessKind {
    /// `X_{t+1} = (1+δ) X_t` surely.
    Deterministic,
    /// Jump to `n` with probability `δ/(n-1)`, otherwise fall back to 1.
    Jackpot,
    /// `max{1, Bin(k, (1+δ)x/k)}`.
    BinomialClamped,
    /// `Bin(k, (1+δ)x/k)` for `x ≥ 1`, a separate law when leaving 0.
    BinomialWithZero,
    /// Binomial growth above `xmin` plus a fresh start to `xmin` or higher
    /// with probability `p` in every step.
    BinomialFreshStart,
    /// `max{1, Bin(k, x/k)}`: no drift at all.
    UnbiasedBinomial,
}

impl ProcessKind {
    pub fn is_binomial(self) -> bool {
        !matches!(self, ProcessKind::Deterministic | ProcessKind::Jackpot)
    }

    pub fn name(self) -> &'static str {
        match self {
            ProcessKind::Deterministic => "deterministic",
            ProcessKind::Jackpot => "jackpot",
            ProcessKind::BinomialClamped => "binomial_clamped",
            ProcessKind::BinomialWithZero => "binomial_with_zero",
            ProcessKind::BinomialFreshStart => "binomial_fresh_start",
            ProcessKind::UnbiasedBinomial => "unbiased_binomial",
        }
    }
}

impl fmt::Display for ProcessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProcessKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let kind = match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "deterministic" => ProcessKind::Deterministic,
            "jackpot" => ProcessKind::Jackpot,
            "binomial_clamped" | "clamped" => ProcessKind::BinomialClamped,
            "binomial_with_zero" | "with_zero" | "zero" => ProcessKind::BinomialWithZero,
            "binomial_fresh_start" | "fresh_start" | "fresh" => ProcessKind::BinomialFreshStart,
            "unbiased_binomial" | "unbiased" => ProcessKind::UnbiasedBinomial,
            other => return Err(Error::parse(format!("unknown process kind `{other}`"))),
        };
        Ok(kind)
    }
}

/// Distribution of the next state when a [`ProcessKind::BinomialWithZero`]
/// process sits at 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum ZeroLaw {
    PointMass { value: u64 },
    Binomial { trials: u64, p: f64 },
    Tabulated { values: Vec<u64>, probs: Vec<f64> },
}

impl ZeroLaw {
    pub fn validate(&self) -> Result<()> {
        match self {
            ZeroLaw::PointMass { .. } => Ok(()),
            ZeroLaw::Binomial { trials, p } => {
                binomial::check_probability(*p, "zero-law probability")?;
                if *trials > binomial::ENUMERATION_CUTOFF {
                    return Err(Error::Size {
                        what: "zero-law trials",
                        got: *trials,
                        limit: binomial::ENUMERATION_CUTOFF,
                    });
                }
                Ok(())
            }
            ZeroLaw::Tabulated { values, probs } => {
                if values.is_empty() || values.len() != probs.len() {
                    return Err(Error::domain("tabulated zero law needs matching, nonempty values and probs"));
                }
                for &q in probs {
                    binomial::check_probability(q, "tabulated mass")?;
                }
                let total: f64 = probs.iter().sum();
                if (total - 1.0).abs() > 1e-9 {
                    return Err(Error::domain(format!("tabulated zero law masses sum to {total}, not 1")));
                }
                Ok(())
            }
        }
    }

    /// Support points with their masses (zero masses dropped).
    pub fn masses(&self) -> Result<Vec<(u64, f64)>> {
        self.validate()?;
        let out = match self {
            ZeroLaw::PointMass { value } => vec![(*value, 1.0)],
            ZeroLaw::Binomial { trials, p } => binomial::pmf_table(*trials, *p)?
                .into_iter()
                .enumerate()
                .filter(|(_, q)| *q > 0.0)
                .map(|(i, q)| (i as u64, q))
                .collect(),
            ZeroLaw::Tabulated { values, probs } => values
                .iter()
                .copied()
                .zip(probs.iter().copied())
                .filter(|(_, q)| *q > 0.0)
                .collect(),
        };
        Ok(out)
    }

    /// `E[min{Y, cap}]` for `Y` drawn from this law, computed exactly.
    pub fn expected_min(&self, cap: u64) -> Result<f64> {
        Ok(self
            .masses()?
            .into_iter()
            .map(|(v, q)| v.min(cap) as f64 * q)
            .sum())
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<u64> {
        match self {
            ZeroLaw::PointMass { value } => Ok(*value),
            ZeroLaw::Binomial { trials, p } => binomial::sample(*trials, *p, rng),
            ZeroLaw::Tabulated { values, probs } => {
                let u: f64 = rng.random();
                let mut acc = 0.0;
                for (v, q) in values.iter().zip(probs) {
                    acc += q;
                    if u < acc {
                        return Ok(*v);
                    }
                }
                values
                    .last()
                    .copied()
                    .ok_or_else(|| Error::domain("empty tabulated zero law"))
            }
        }
    }
}

impl fmt::Display for ZeroLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZeroLaw::PointMass { value } => write!(f, "point:{value}"),
            ZeroLaw::Binomial { trials, p } => write!(f, "bin:{trials}:{p}"),
            ZeroLaw::Tabulated { values, probs } => {
                f.write_str("table:")?;
                for (i, (v, q)) in values.iter().zip(probs).enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}={q}")?;
                }
                Ok(())
            }
        }
    }
}

/// Parses `point:V`, `bin:K:P` or `table:V=Q,V=Q,...`.
impl FromStr for ZeroLaw {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (tag, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::parse(format!("zero law `{s}` lacks a `tag:` prefix")))?;
        let law = match tag {
            "point" => ZeroLaw::PointMass {
                value: parse_num(rest, "point mass value")?,
            },
            "bin" => {
                let (k, p) = rest
                    .split_once(':')
                    .ok_or_else(|| Error::parse("binomial zero law must read `bin:K:P`"))?;
                ZeroLaw::Binomial {
                    trials: parse_num(k, "binomial trials")?,
                    p: parse_num(p, "binomial probability")?,
                }
            }
            "table" => {
                let mut values = Vec::new();
                let mut probs = Vec::new();
                for entry in rest.split(',') {
                    let (v, q) = entry
                        .split_once('=')
                        .ok_or_else(|| Error::parse(format!("table entry `{entry}` must read `V=Q`")))?;
                    values.push(parse_num(v, "table value")?);
                    probs.push(parse_num(q, "table mass")?);
                }
                ZeroLaw::Tabulated { values, probs }
            }
            other => return Err(Error::parse(format!("unknown zero-law tag `{other}`"))),
        };
        law.validate().map_err(|e| Error::parse(e.to_string()))?;
        Ok(law)
    }
}

pub(crate) fn parse_num<T: FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| Error::parse(format!("cannot read {what} from `{}`", s.trim())))
}

/// Start condition: in every step, the next state is at least `xmin` with
/// probability at least `p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FreshStart {
    pub xmin: u64,
    pub p: f64,
}

/// Full parameterisation of an up-drift process.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProcessSpec {
    pub kind: ProcessKind,
    /// Number of binomial trials.
    pub k: u64,
    /// Relative drift δ.
    pub delta: f64,
    /// Hitting threshold n.
    pub target_n: u64,
    /// Slack parameter γ₀.
    pub gamma0: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero_law: Option<ZeroLaw>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fresh_start: Option<FreshStart>,
    /// Initial state.
    pub x0: u64,
}

impl ProcessSpec {
    pub fn deterministic(delta: f64, target_n: u64) -> Self {
        Self::base(ProcessKind::Deterministic, 1, delta, target_n, 0.5)
    }

    pub fn jackpot(delta: f64, target_n: u64) -> Self {
        Self::base(ProcessKind::Jackpot, 1, delta, target_n, 0.5)
    }

    pub fn clamped(k: u64, delta: f64, target_n: u64, gamma0: f64) -> Self {
        Self::base(ProcessKind::BinomialClamped, k, delta, target_n, gamma0)
    }

    pub fn with_zero(k: u64, delta: f64, target_n: u64, gamma0: f64, law: ZeroLaw) -> Self {
        let mut spec = Self::base(ProcessKind::BinomialWithZero, k, delta, target_n, gamma0);
        spec.zero_law = Some(law);
        spec
    }

    /// Fresh-start process; starts at 0 so the first visit to `xmin` is
    /// itself driven by the start condition.
    pub fn fresh_start(k: u64, delta: f64, target_n: u64, xmin: u64, p: f64) -> Self {
        let mut spec = Self::base(ProcessKind::BinomialFreshStart, k, delta, target_n, 0.5);
        spec.fresh_start = Some(FreshStart { xmin, p });
        spec.x0 = 0;
        spec
    }

    pub fn unbiased(k: u64, target_n: u64, gamma0: f64) -> Self {
        Self::base(ProcessKind::UnbiasedBinomial, k, 0.0, target_n, gamma0)
    }

    fn base(kind: ProcessKind, k: u64, delta: f64, target_n: u64, gamma0: f64) -> Self {
        ProcessSpec {
            kind,
            k,
            delta,
            target_n,
            gamma0,
            zero_law: None,
            fresh_start: None,
            x0: 1,
        }
    }

    pub fn starting_at(mut self, x0: u64) -> Self {
        self.x0 = x0;
        self
    }

    /// Threshold between the fluctuation-driven and the drift-driven regime:
    /// `min{⌈100/δ⌉, n}` for `δ ≤ 1`, `min{32, n}` otherwise.
    pub fn d0(&self) -> u64 {
        d0(self.delta, self.target_n)
    }

    /// Structural checks without which the process cannot be simulated.
    pub fn validate(&self) -> Result<()> {
        if self.target_n == 0 {
            return Err(Error::domain("target n must be at least 1"));
        }
        if self.kind.is_binomial() && self.k == 0 {
            return Err(Error::domain("binomial processes need k ≥ 1"));
        }
        let needs_drift = self.kind != ProcessKind::UnbiasedBinomial;
        if needs_drift && !(self.delta.is_finite() && self.delta > 0.0) {
            return Err(Error::domain(format!("drift δ = {} must be positive and finite", self.delta)));
        }
        if !(self.gamma0.is_finite() && self.gamma0 > 0.0 && self.gamma0 < 1.0) {
            return Err(Error::domain(format!("γ₀ = {} must lie in (0,1)", self.gamma0)));
        }
        match self.kind {
            ProcessKind::BinomialWithZero => {
                let law = self
                    .zero_law
                    .as_ref()
                    .ok_or_else(|| Error::domain("binomial_with_zero needs a zero law"))?;
                law.validate()?;
            }
            ProcessKind::BinomialFreshStart => {
                let fs = self
                    .fresh_start
                    .ok_or_else(|| Error::domain("binomial_fresh_start needs xmin and p"))?;
                binomial::check_probability(fs.p, "fresh-start probability")?;
                if fs.p == 0.0 || fs.xmin == 0 {
                    return Err(Error::domain("fresh start needs p > 0 and xmin ≥ 1"));
                }
            }
            ProcessKind::Jackpot => {
                if self.target_n < 2 || self.delta > (self.target_n - 1) as f64 {
                    return Err(Error::domain("jackpot needs n ≥ 2 and δ ≤ n − 1"));
                }
            }
            _ => {}
        }
        if matches!(self.kind, ProcessKind::BinomialClamped | ProcessKind::UnbiasedBinomial) && self.x0 == 0 {
            return Err(Error::domain(format!("{} never visits state 0; x0 must be ≥ 1", self.kind)));
        }
        Ok(())
    }

    /// Named theorem preconditions that this spec violates. A violation
    /// leaves the spec constructible and simulable where the laws still make
    /// sense; it only disqualifies comparisons against the matching bound.
    pub fn violated_preconditions(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.kind.is_binomial() {
            return out;
        }
        let n1 = self.target_n.saturating_sub(1) as f64;
        let k = self.k as f64;
        match self.kind {
            ProcessKind::UnbiasedBinomial => {
                if n1 > self.gamma0 * k {
                    out.push("n-1 <= gamma0*k".to_string());
                }
            }
            ProcessKind::BinomialFreshStart => {
                if n1 > k / (1.0 + self.delta) {
                    out.push("n-1 <= k/(1+delta)".to_string());
                }
                if let Some(fs) = self.fresh_start {
                    if (fs.xmin as f64) < fresh_start_d0(self.delta, self.target_n) {
                        out.push("xmin >= D0".to_string());
                    }
                }
            }
            _ => {
                if n1 > self.gamma0 * k {
                    out.push("n-1 <= gamma0*k".to_string());
                }
                if n1 > k / (1.0 + self.delta) {
                    out.push("n-1 <= k/(1+delta)".to_string());
                }
            }
        }
        out
    }
}

/// `min{⌈100/δ⌉, n}` for `δ ≤ 1`, `min{32, n}` for `δ > 1`.
pub fn d0(delta: f64, target_n: u64) -> u64 {
    if delta <= 1.0 {
        (ceil_snapped(100.0 / delta) as u64).min(target_n)
    } else {
        32u64.min(target_n)
    }
}

/// The start-condition variant of the threshold, without rounding up:
/// `min{100/δ, n}` for `δ ≤ 1`, `min{32, n}` otherwise.
pub fn fresh_start_d0(delta: f64, target_n: u64) -> f64 {
    if delta <= 1.0 {
        (100.0 / delta).min(target_n as f64)
    } else {
        32f64.min(target_n as f64)
    }
}

fn growth_probability(spec: &ProcessSpec, state: u64, factor: f64) -> Result<f64> {
    let p = factor * state as f64 / spec.k as f64;
    if p > 1.0 {
        return Err(Error::domain(format!(
            "success probability {factor}·{state}/{} = {p} exceeds 1; the binomial condition needs x ≤ k/(1+δ) (n-1 <= k/(1+delta))",
            spec.k
        )));
    }
    Ok(p)
}

/// One transition of the process from an integer state.
///
/// For [`ProcessKind::Deterministic`] this returns `⌊(1+δ)·state⌋`; runs use
/// [`Walker`], which keeps the exact real-valued track instead.
pub fn step<R: Rng + ?Sized>(spec: &ProcessSpec, state: u64, rng: &mut R) -> Result<u64> {
    let delta = spec.delta;
    match spec.kind {
        ProcessKind::Deterministic => Ok(((1.0 + delta) * state as f64).floor() as u64),
        ProcessKind::Jackpot => {
            let q = delta / (spec.target_n as f64 - 1.0);
            binomial::check_probability(q, "jackpot probability δ/(n-1)")?;
            Ok(if rng.random::<f64>() < q { spec.target_n } else { 1 })
        }
        ProcessKind::BinomialClamped => {
            if state == 0 {
                return Err(Error::domain("binomial_clamped is undefined at state 0"));
            }
            let p = growth_probability(spec, state, 1.0 + delta)?;
            Ok(binomial::sample(spec.k, p, rng)?.max(1))
        }
        ProcessKind::UnbiasedBinomial => {
            if state == 0 {
                return Err(Error::domain("unbiased_binomial is undefined at state 0"));
            }
            let p = growth_probability(spec, state, 1.0)?;
            Ok(binomial::sample(spec.k, p, rng)?.max(1))
        }
        ProcessKind::BinomialWithZero => {
            if state == 0 {
                let law = spec
                    .zero_law
                    .as_ref()
                    .ok_or_else(|| Error::domain("binomial_with_zero needs a zero law"))?;
                return law.sample(rng);
            }
            let p = growth_probability(spec, state, 1.0 + delta)?;
            binomial::sample(spec.k, p, rng)
        }
        ProcessKind::BinomialFreshStart => {
            let fs = spec
                .fresh_start
                .ok_or_else(|| Error::domain("binomial_fresh_start needs xmin and p"))?;
            let fresh = rng.random::<f64>() < fs.p;
            if state < fs.xmin {
                return Ok(if fresh { fs.xmin } else { 0 });
            }
            let p = growth_probability(spec, state, 1.0 + delta)?;
            let grown = binomial::sample(spec.k, p, rng)?;
            Ok(if fresh { grown.max(fs.xmin) } else { grown })
        }
    }
}

/// Stateful cursor over one trajectory.
#[derive(Debug, Clone)]
pub struct Walker<'a> {
    spec: &'a ProcessSpec,
    state: u64,
    track: f64,
}

impl<'a> Walker<'a> {
    pub fn new(spec: &'a ProcessSpec) -> Self {
        Self::from_state(spec, spec.x0)
    }

    pub fn from_state(spec: &'a ProcessSpec, state: u64) -> Self {
        Walker {
            spec,
            state,
            track: state as f64,
        }
    }

    /// Recorded (integer) state.
    pub fn state(&self) -> u64 {
        self.state
    }

    /// State as a real; the exact track for the deterministic process.
    pub fn value(&self) -> f64 {
        if self.spec.kind == ProcessKind::Deterministic {
            self.track
        } else {
            self.state as f64
        }
    }

    pub fn at_target(&self) -> bool {
        self.value() >= self.spec.target_n as f64
    }

    pub fn advance<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<u64> {
        if self.spec.kind == ProcessKind::Deterministic {
            self.track *= 1.0 + self.spec.delta;
            self.state = if self.track >= u64::MAX as f64 {
                u64::MAX
            } else {
                self.track.floor() as u64
            };
        } else {
            self.state = step(self.spec, self.state, rng)?;
        }
        Ok(self.state)
    }
}

/// A recorded run. `hit_time` is the first `t` with `X_t ≥ n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub states: Vec<u64>,
    pub hit_time: Option<u64>,
    pub censored: bool,
}

/// Runs until the target is reached or `cap` steps have been taken,
/// recording every state.
pub fn run_to_target<R: Rng + ?Sized>(spec: &ProcessSpec, cap: u64, rng: &mut R) -> Result<Trajectory> {
    check_cap(cap)?;
    spec.validate()?;
    let mut walker = Walker::new(spec);
    let mut states = vec![walker.state()];
    let mut hit_time = walker.at_target().then_some(0);
    let mut t = 0;
    while hit_time.is_none() && t < cap {
        t += 1;
        states.push(walker.advance(rng)?);
        if walker.at_target() {
            hit_time = Some(t);
        }
    }
    Ok(Trajectory {
        states,
        censored: hit_time.is_none(),
        hit_time,
    })
}

/// Hitting time only, without storing the trajectory; `None` when censored.
pub fn hitting_time<R: Rng + ?Sized>(spec: &ProcessSpec, cap: u64, rng: &mut R) -> Result<Option<u64>> {
    check_cap(cap)?;
    spec.validate()?;
    let mut walker = Walker::new(spec);
    if walker.at_target() {
        return Ok(Some(0));
    }
    for t in 1..=cap {
        walker.advance(rng)?;
        if walker.at_target() {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

fn check_cap(cap: u64) -> Result<()> {
    if cap == 0 {
        Err(Error::domain("step cap must be at least 1"))
    } else {
        Ok(())
    }
}

/// Outcome of watching for a return to `≤ lo` after having reached `≥ hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReturnWatchRecord {
    pub reached_hi: bool,
    pub returned_lo: bool,
    pub hi_threshold: u64,
    pub lo_threshold: u64,
    /// `hi = n`: reaching `hi` ends the run, so a return is impossible.
    pub degenerate: bool,
    /// The cap ended the run before the target was hit or a return seen.
    pub censored: bool,
}

/// Runs from `x0` until the target, a return to `≤ lo` after a visit to
/// `≥ hi`, or the cap.
pub fn run_with_return_watch<R: Rng + ?Sized>(
    spec: &ProcessSpec,
    hi: u64,
    lo: u64,
    cap: u64,
    rng: &mut R,
) -> Result<ReturnWatchRecord> {
    check_cap(cap)?;
    spec.validate()?;
    if !(lo < hi && hi <= spec.target_n) {
        return Err(Error::domain(format!(
            "return watch needs lo < hi ≤ n, got lo={lo}, hi={hi}, n={}",
            spec.target_n
        )));
    }
    let mut rec = ReturnWatchRecord {
        reached_hi: false,
        returned_lo: false,
        hi_threshold: hi,
        lo_threshold: lo,
        degenerate: hi == spec.target_n,
        censored: false,
    };
    let mut walker = Walker::new(spec);
    let mut t = 0;
    loop {
        let x = walker.value();
        if rec.reached_hi && x <= lo as f64 {
            rec.returned_lo = true;
            return Ok(rec);
        }
        if x >= hi as f64 {
            rec.reached_hi = true;
        }
        if walker.at_target() {
            return Ok(rec);
        }
        if t == cap {
            rec.censored = true;
            return Ok(rec);
        }
        walker.advance(rng)?;
        t += 1;
    }
}

/// Starting from `X = d`, whether some `s ∈ [0..T₁]` has
/// `X_s ≤ d/2 + s·δd/2`, where `T₁ = min{T, ⌈3/δ⌉}` and `T` is the first
/// time the state reaches `min{n, 2d}`.
pub fn dip_watch<R: Rng + ?Sized>(spec: &ProcessSpec, d: u64, rng: &mut R) -> Result<bool> {
    spec.validate()?;
    let delta = spec.delta;
    let stop = spec.target_n.min(2 * d) as f64;
    let window = ceil_snapped(3.0 / delta) as u64;
    let half = d as f64 / 2.0;
    let mut walker = Walker::from_state(spec, d);
    let mut s = 0u64;
    loop {
        let x = walker.value();
        if x <= half + s as f64 * delta * half {
            return Ok(true);
        }
        if x >= stop || s == window {
            return Ok(false);
        }
        walker.advance(rng)?;
        s += 1;
    }
}

/// Iteration budget `⌈log₂(n/d)⌉·⌈3/δ⌉` of the climb event (0 when `d ≥ n`).
pub fn climb_window(delta: f64, target_n: u64, d: u64) -> u64 {
    if d >= target_n {
        return 0;
    }
    let doublings = ceil_snapped(log_base(target_n as f64 / d as f64, 2.0)) as u64;
    doublings * ceil_snapped(3.0 / delta) as u64
}

/// Starting from `X = d`, whether the target is reached within
/// [`climb_window`] iterations.
pub fn climb_watch<R: Rng + ?Sized>(spec: &ProcessSpec, d: u64, rng: &mut R) -> Result<bool> {
    spec.validate()?;
    let window = climb_window(spec.delta, spec.target_n, d);
    let mut walker = Walker::from_state(spec, d);
    for _ in 0..window {
        if walker.at_target() {
            return Ok(true);
        }
        walker.advance(rng)?;
    }
    Ok(walker.at_target())
}
