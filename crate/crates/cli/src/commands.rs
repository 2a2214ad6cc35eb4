use anyhow::{anyhow, bail, Context};
use serde::Serialize;
use toml::{Table, Value};
use updrift::bounds::{
    self, additive_overshoot_report, climb_floor, dip_bound, level_large_delta_bound, level_new_bound, level_old_bound,
    nodrift_bound, return_bound, suggest_lambda, thm1_bound, thm2_bound, thm3_bound, BoundReport, Direction,
    LevelModel, TheoremId,
};
use updrift::ea::{
    construct_population, ea_run, estimate_level_params, fps_model, ranking_model, tournament_model, EaConfig,
    FitnessKind, SelectionKind,
};
use updrift::process::{ProcessKind, ProcessSpec};
use updrift::stats::ols;
use updrift::verify::{
    check_theorem, check_value, climb_success_check, dip_probability_check, estimate_hitting_time,
    exact_hitting_time_markov, return_probability_check, run_trials, MonteCarloSummary, Verdict, VerdictStatus,
};

use crate::config::{BoundArgs, BoundParams, Command, EaArgs, ExperimentConfig, LevelsArgs, ProcessArgs, SweepArgs, VerifyArgs};

const PROCESS_TRIALS: u64 = 10_000;
const PROCESS_CAP: u64 = 10_000_000;
const EA_RUNS: u64 = 30;
const EA_CAP: u64 = 1_000_000;

/// Result of a command: a value to render and the process exit code.
pub struct CommandOutput {
    pub result: Value,
    pub exit_code: u8,
}

fn ok<T: Serialize>(v: &T) -> anyhow::Result<CommandOutput> {
    Ok(CommandOutput {
        result: Value::try_from(v)?,
        exit_code: 0,
    })
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> anyhow::Result<T> {
    v.ok_or_else(|| anyhow!("missing --{flag}"))
}

pub fn execute(cfg: &ExperimentConfig) -> anyhow::Result<CommandOutput> {
    match &cfg.command {
        Command::Bound(a) => ok(&cmd_bound(a)?),
        Command::Simulate(a) => cmd_simulate(cfg, a),
        Command::Verify(a) => cmd_verify(cfg, a),
        Command::Ea(a) => cmd_ea(cfg, a),
        Command::Levels(a) => cmd_levels(cfg, a),
        Command::Sweep(a) => cmd_sweep(a),
    }
}

#[derive(Serialize)]
pub struct BoundResult {
    pub report: BoundReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_suggestion: Option<bounds::LambdaSuggestion>,
}

fn level_model(p: &BoundParams) -> anyhow::Result<LevelModel> {
    let z = if !p.z.is_empty() {
        p.z.clone()
    } else {
        let m = need(p.m, "m (or --z)")?;
        vec![need(p.z_const, "z-const (or --z)")?; m.saturating_sub(1) as usize]
    };
    Ok(LevelModel {
        m: z.len() as u64 + 1,
        z,
        delta: need(p.delta, "delta")?,
        gamma0: need(p.gamma0, "gamma0")?,
        lambda: p.lambda.unwrap_or(1),
    })
}

pub fn cmd_bound(a: &BoundArgs) -> anyhow::Result<BoundResult> {
    let p = &a.params;
    let mut suggestion = None;
    let report = match a.theorem {
        TheoremId::Thm1 => thm1_bound(need(p.delta, "delta")?, need(p.n, "n")?, need(p.gamma0, "gamma0")?, need(p.k, "k")?),
        TheoremId::Nodrift => nodrift_bound(need(p.d0, "d0")?, need(p.gamma0, "gamma0")?, p.k),
        TheoremId::Thm2 => thm2_bound(
            need(p.delta, "delta")?,
            need(p.n, "n")?,
            need(p.gamma0, "gamma0")?,
            need(p.k, "k")?,
            need(p.e0, "e0")?,
        )?,
        TheoremId::Thm3 => thm3_bound(
            need(p.delta, "delta")?,
            need(p.n, "n")?,
            need(p.k, "k")?,
            need(p.xmin, "xmin")?,
            need(p.p, "p")?,
        ),
        TheoremId::Dip => dip_bound(need(p.delta, "delta")?, need(p.d, "d")?, need(p.n, "n")?),
        TheoremId::Climb => climb_floor(need(p.delta, "delta")?, need(p.d, "d")?, need(p.n, "n")?),
        TheoremId::Return => return_bound(need(p.delta, "delta")?, need(p.n, "n")?),
        TheoremId::AdditiveOvershoot => additive_overshoot_report(
            need(p.x0, "x0")?,
            need(p.expected_final, "expected-final")?,
            need(p.drift, "drift")?,
        )?,
        id @ (TheoremId::LevelNew | TheoremId::LevelLargeDelta | TheoremId::LevelOld) => {
            let mut model = level_model(p)?;
            if p.lambda.is_none() {
                let s = suggest_lambda(&model, id)?;
                model.lambda = s.lambda;
                suggestion = Some(s);
            }
            match id {
                TheoremId::LevelNew => level_new_bound(&model)?,
                TheoremId::LevelLargeDelta => level_large_delta_bound(&model)?,
                _ => level_old_bound(&model)?,
            }
        }
    };
    Ok(BoundResult {
        report,
        lambda_suggestion: suggestion,
    })
}

pub fn build_process(a: &ProcessArgs, default_kind: Option<ProcessKind>) -> anyhow::Result<ProcessSpec> {
    let kind = a.process.or(default_kind).ok_or_else(|| anyhow!("missing --process"))?;
    let spec = match kind {
        ProcessKind::Deterministic => ProcessSpec::deterministic(need(a.delta, "delta")?, need(a.n, "n")?),
        ProcessKind::Jackpot => ProcessSpec::jackpot(need(a.delta, "delta")?, need(a.n, "n")?),
        ProcessKind::BinomialClamped => {
            ProcessSpec::clamped(need(a.k, "k")?, need(a.delta, "delta")?, need(a.n, "n")?, need(a.gamma0, "gamma0")?)
        }
        ProcessKind::BinomialWithZero => ProcessSpec::with_zero(
            need(a.k, "k")?,
            need(a.delta, "delta")?,
            need(a.n, "n")?,
            need(a.gamma0, "gamma0")?,
            a.zero_law.clone().ok_or_else(|| anyhow!("missing --zero-law"))?,
        ),
        ProcessKind::BinomialFreshStart => ProcessSpec::fresh_start(
            need(a.k, "k")?,
            need(a.delta, "delta")?,
            need(a.n, "n")?,
            need(a.xmin, "xmin")?,
            need(a.p, "p")?,
        ),
        ProcessKind::UnbiasedBinomial => ProcessSpec::unbiased(need(a.k, "k")?, need(a.n, "n")?, need(a.gamma0, "gamma0")?),
    };
    let spec = match a.x0 {
        Some(x0) => spec.starting_at(x0),
        None => spec,
    };
    spec.validate()?;
    Ok(spec)
}

#[derive(Serialize)]
struct SimulateResult {
    process: ProcessSpec,
    summary: MonteCarloSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact_mean: Option<f64>,
    violated_preconditions: Vec<String>,
}

fn cmd_simulate(cfg: &ExperimentConfig, a: &ProcessArgs) -> anyhow::Result<CommandOutput> {
    let spec = build_process(a, None)?;
    let summary = estimate_hitting_time(
        &spec,
        cfg.trials.unwrap_or(PROCESS_TRIALS),
        cfg.cap.unwrap_or(PROCESS_CAP),
        cfg.seed,
    )?;
    let exact_mean = if a.exact { Some(exact_hitting_time_markov(&spec)?) } else { None };
    ok(&SimulateResult {
        violated_preconditions: spec.violated_preconditions(),
        process: spec,
        summary,
        exact_mean,
    })
}

#[derive(Serialize)]
struct VerifyResult {
    verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<BoundReport>,
}

fn verdict_exit(v: &Verdict) -> u8 {
    match v.status {
        VerdictStatus::Consistent => 0,
        VerdictStatus::Inconsistent => 1,
        VerdictStatus::Withheld => 3,
    }
}

fn cmd_verify(cfg: &ExperimentConfig, a: &VerifyArgs) -> anyhow::Result<CommandOutput> {
    let trials = cfg.trials.unwrap_or(PROCESS_TRIALS);
    let cap = cfg.cap.unwrap_or(PROCESS_CAP);
    let seed = cfg.seed;
    let default_kind = match a.theorem {
        TheoremId::Thm2 => ProcessKind::BinomialWithZero,
        TheoremId::Thm3 => ProcessKind::BinomialFreshStart,
        TheoremId::Nodrift => ProcessKind::UnbiasedBinomial,
        _ => ProcessKind::BinomialClamped,
    };
    let spec = build_process(&a.process, Some(default_kind))?;
    let (mut verdict, report) = match a.theorem {
        TheoremId::Dip => (dip_probability_check(&spec, need(a.d, "d")?, trials, seed)?, None),
        TheoremId::Climb => (climb_success_check(&spec, need(a.d, "d")?, trials, seed)?, None),
        TheoremId::Return => (return_probability_check(&spec, trials, cap, seed)?, None),
        TheoremId::Thm1 | TheoremId::Thm2 | TheoremId::Thm3 | TheoremId::Nodrift => {
            let report = match a.theorem {
                TheoremId::Thm1 => thm1_bound(spec.delta, spec.target_n, spec.gamma0, spec.k),
                TheoremId::Thm2 => {
                    let law = spec.zero_law.as_ref().ok_or_else(|| anyhow!("missing --zero-law"))?;
                    let e0 = law.expected_min(spec.d0())?;
                    thm2_bound(spec.delta, spec.target_n, spec.gamma0, spec.k, e0)?
                }
                TheoremId::Thm3 => {
                    let fs = spec.fresh_start.ok_or_else(|| anyhow!("missing --xmin/--p"))?;
                    thm3_bound(spec.delta, spec.target_n, spec.k, fs.xmin, fs.p)
                }
                _ => nodrift_bound(spec.target_n, spec.gamma0, Some(spec.k)),
            };
            let summary = estimate_hitting_time(&spec, trials, cap, seed)?;
            let verdict = match a.bound_override {
                Some(_) => check_value(report.bound, &summary, Direction::UpperBoundsMean),
                None => check_theorem(&report, &summary, Direction::UpperBoundsMean)?,
            };
            (verdict, Some(report))
        }
        other => bail!("verify does not support `{other}`; use `ea` for level bounds"),
    };
    if let Some(b) = a.bound_override {
        let mut v = check_value(b, &verdict.empirical, verdict.direction);
        v.flags = std::mem::take(&mut verdict.flags);
        verdict = v;
    }
    let exit_code = verdict_exit(&verdict);
    Ok(CommandOutput {
        result: Value::try_from(VerifyResult { verdict, report })?,
        exit_code,
    })
}

fn parse_fitness(name: &str, c: Option<f64>) -> anyhow::Result<FitnessKind> {
    match name.trim().to_ascii_lowercase().replace('-', "_").as_str() {
        "onemax" => Ok(FitnessKind::OneMax),
        "leadingones" => Ok(FitnessKind::LeadingOnes),
        "onemax_partial" => Ok(FitnessKind::OneMaxPartial { c: need(c, "c")? }),
        other => bail!("unknown fitness `{other}`"),
    }
}

#[derive(Serialize)]
struct EaRow {
    n: usize,
    lambda: usize,
    pmut: f64,
    runs: u64,
    hits: u64,
    mean_evaluations: f64,
    stderr_evaluations: f64,
    mean_generations: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    level_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda_min: Option<f64>,
    #[serde(skip_serializing_if = "String::is_empty")]
    warning: String,
}

#[derive(Serialize)]
struct EaResult {
    selection: SelectionKind,
    fitness: FitnessKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    log_log_slope: Option<f64>,
    rows: Vec<EaRow>,
}

/// Level bound for the configured EA, with a warning when λ is too small.
fn ea_level_check(config: &EaConfig, gamma0: f64) -> (Option<f64>, Option<f64>, String) {
    let lambda = config.lambda as u64;
    let model = match config.selection {
        SelectionKind::Tournament2 => tournament_model(&config.fitness, config.n, lambda, gamma0, config.pmut),
        SelectionKind::FitnessProportionate => fps_model(&config.fitness, config.n, lambda, gamma0, config.pmut),
        SelectionKind::RankingMuComma => ranking_model(
            &config.fitness,
            config.n,
            lambda,
            config.mu.unwrap_or(config.lambda) as u64,
            gamma0,
            config.pmut,
        ),
    };
    let model = match model {
        Ok(m) => m,
        Err(e) => return (None, None, format!("no level model: {e}")),
    };
    if !(model.delta > 0.0) {
        return (None, None, format!("level model has delta = {:.4} <= 0", model.delta));
    }
    let report = if model.delta > 1.0 { level_large_delta_bound(&model) } else { level_new_bound(&model) };
    match report {
        Ok(r) if r.valid => (Some(r.bound), r.auxiliary.get("lambda_min").copied(), String::new()),
        Ok(r) => (
            Some(r.bound),
            r.auxiliary.get("lambda_min").copied(),
            format!("preconditions violated: {}", r.violated_preconditions.join("; ")),
        ),
        Err(e) => (None, None, format!("no level bound: {e}")),
    }
}

fn cmd_ea(cfg: &ExperimentConfig, a: &EaArgs) -> anyhow::Result<CommandOutput> {
    if a.n.is_empty() {
        bail!("missing --n");
    }
    let fitness = parse_fitness(&a.fitness, a.c)?;
    let runs = cfg.trials.unwrap_or(EA_RUNS);
    let cap = cfg.cap.unwrap_or(EA_CAP);
    let mut rows = Vec::new();
    for &n in &a.n {
        let nf = n as f64;
        let lambda = a.lambda.unwrap_or_else(|| (nf * nf.ln()).ceil().max(1.0) as usize);
        let pmut = a
            .pmut
            .unwrap_or_else(|| a.chi.unwrap_or(1.0) / nf.powi(a.pmut_power.unwrap_or(1)));
        let config = EaConfig {
            n,
            lambda,
            mu: a.mu,
            selection: a.selection,
            pmut,
            fitness,
            seed: cfg.seed,
        };
        config.validate()?;
        let gamma0 = a.gamma0.unwrap_or(match (a.selection, a.mu) {
            (SelectionKind::RankingMuComma, Some(mu)) => mu as f64 / lambda as f64,
            _ => 0.5,
        });
        let (level_bound, lambda_min, warning) = ea_level_check(&config, gamma0);
        let recs = run_trials(0..runs, cfg.seed, |rng| ea_run(&config, cap, rng))?;
        let times: Vec<Option<u64>> = recs.iter().map(|r| r.hit.then_some(r.evaluations)).collect();
        let s = MonteCarloSummary::from_times(&times, cfg.seed);
        let gens: f64 = recs.iter().map(|r| r.generations as f64).sum::<f64>() / runs.max(1) as f64;
        rows.push(EaRow {
            n,
            lambda,
            pmut,
            runs,
            hits: recs.iter().filter(|r| r.hit).count() as u64,
            mean_evaluations: s.mean,
            stderr_evaluations: s.stderr,
            mean_generations: gens,
            level_bound,
            lambda_min,
            warning,
        });
    }
    let log_log_slope = (rows.len() >= 2 && rows.iter().all(|r| r.hits == r.runs)).then(|| {
        let x: Vec<f64> = rows.iter().map(|r| (r.n as f64).ln()).collect();
        let y: Vec<f64> = rows.iter().map(|r| r.mean_evaluations.ln()).collect();
        ols(&x, &y).0
    });
    ok(&EaResult {
        selection: a.selection,
        fitness,
        log_log_slope,
        rows,
    })
}

#[derive(Serialize)]
struct LevelsResult {
    estimate: updrift::ea::LevelEstimate,
    /// Probability that mutation leaves a string unchanged.
    copy_probability: f64,
    population_size: usize,
}

fn parse_groups(groups: &[String]) -> anyhow::Result<Vec<(usize, u64)>> {
    groups
        .iter()
        .map(|g| {
            let (count, fit) = g.split_once(':').ok_or_else(|| anyhow!("group `{g}` is not count:fitness"))?;
            Ok((
                count.trim().parse().with_context(|| format!("group `{g}`"))?,
                fit.trim().parse().with_context(|| format!("group `{g}`"))?,
            ))
        })
        .collect()
}

fn cmd_levels(cfg: &ExperimentConfig, a: &LevelsArgs) -> anyhow::Result<CommandOutput> {
    let fitness = parse_fitness(&a.fitness, a.c)?;
    let groups = parse_groups(&a.groups)?;
    let pmut = a.pmut.unwrap_or(1.0 / a.n as f64);
    let mut rng = updrift::rng::seeded(cfg.seed);
    let population = construct_population(&fitness, a.n, &groups, &mut rng)?;
    let config = EaConfig {
        n: a.n,
        lambda: population.len(),
        mu: a.mu,
        selection: a.selection,
        pmut,
        fitness,
        seed: cfg.seed,
    };
    let estimate = estimate_level_params(&config, &population, a.j, cfg.trials.unwrap_or(PROCESS_TRIALS), &mut rng)?;
    ok(&LevelsResult {
        estimate,
        copy_probability: (1.0 - pmut).powi(a.n as i32),
        population_size: population.len(),
    })
}

#[derive(Serialize)]
struct SweepRow {
    value: f64,
    bound: f64,
    valid: bool,
    degenerate: bool,
    violated_preconditions: Vec<String>,
}

#[derive(Serialize)]
struct SweepResult {
    theorem: TheoremId,
    param: String,
    rows: Vec<SweepRow>,
}

const INTEGER_PARAMS: [&str; 7] = ["n", "k", "xmin", "d0", "d", "m", "lambda"];
const REAL_PARAMS: [&str; 8] = ["delta", "gamma0", "e0", "p", "z_const", "x0", "expected_final", "drift"];

fn cmd_sweep(a: &SweepArgs) -> anyhow::Result<CommandOutput> {
    let param = a.param.replace('-', "_");
    let integer = INTEGER_PARAMS.contains(&param.as_str());
    if !integer && !REAL_PARAMS.contains(&param.as_str()) {
        bail!("cannot sweep `{}`", a.param);
    }
    let base = Value::try_from(&a.params)?;
    let mut rows = Vec::new();
    for &v in &a.values {
        let mut t: Table = base.as_table().cloned().unwrap_or_default();
        let value = if integer {
            if v.fract() != 0.0 || v < 0.0 {
                bail!("`{}` takes non-negative integers, got {v}", a.param);
            }
            Value::Integer(v as i64)
        } else {
            Value::Float(v)
        };
        t.insert(param.clone(), value);
        let params: BoundParams = Value::Table(t).try_into()?;
        let r = cmd_bound(&BoundArgs {
            theorem: a.theorem,
            params,
        })?
        .report;
        rows.push(SweepRow {
            value: v,
            bound: r.bound,
            valid: r.valid,
            degenerate: r.degenerate,
            violated_preconditions: r.violated_preconditions,
        });
    }
    ok(&SweepResult {
        theorem: a.theorem,
        param,
        rows,
    })
}

