//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Oracles are computed here independently of the library.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use updrift::bounds::{
    level_large_delta_bound, level_new_bound, suggest_lambda, thm1_bound, thm2_bound, thm3_bound, Direction,
    LevelModel, TheoremId,
};
use updrift::ea::{ea_run, ranking_model, tournament_model, EaConfig, FitnessKind, SelectionKind};
use updrift::potential::{exact_binomial_g_expectation, g, taylor_lower, taylor_upper};
use updrift::process::{self, ProcessSpec, ZeroLaw};
use updrift::rng::DEFAULT_SEED;
use updrift::stats::ols;
use updrift::verify::{
    check_theorem, climb_success_check, dip_probability_check, estimate_hitting_time,
    exact_hitting_time_markov, mean_tail_exact_check, return_probability_check, run_trials, MonteCarloSummary,
    Verdict, VerdictStatus,
};

const CAP: u64 = 10_000_000;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// `ln C(k, i) + i ln p + (k−i) ln(1−p)` by direct summation of logs.
fn log_pmf_direct(k: u64, i: u64, p: f64) -> f64 {
    let mut lc = 0.0;
    for r in 1..=i {
        lc += ((k - i + r) as f64).ln() - (r as f64).ln();
    }
    let a = if i == 0 { 0.0 } else { i as f64 * p.ln() };
    let b = if i == k { 0.0 } else { (k - i) as f64 * (1.0 - p).ln() };
    lc + a + b
}

fn pmf_direct(k: u64, p: f64) -> Vec<f64> {
    if p == 1.0 {
        let mut v = vec![0.0; k as usize + 1];
        v[k as usize] = 1.0;
        return v;
    }
    (0..=k).map(|i| log_pmf_direct(k, i, p).exp()).collect()
}

fn ac1() -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    for delta in [0.1, 0.5, 1.0, 3.0] {
        for n in [10u64, 100, 1000] {
            let ratio = (n as f64).ln() / (1.0f64 + delta).ln();
            assert!((ratio - ratio.round()).abs() > 1e-6, "oracle ambiguous at δ={delta}, n={n}");
            let oracle = ratio.ceil() as u64;
            let spec = ProcessSpec::deterministic(delta, n);
            let traj = process::run_to_target(&spec, 10_000, &mut updrift::rng::seeded(0)).unwrap();
            let markov = exact_hitting_time_markov(&spec).unwrap();
            count += 1;
            if traj.hit_time != Some(oracle) || markov != oracle as f64 {
                bad.push(format!("δ={delta} n={n}: got {:?}, oracle {oracle}", traj.hit_time));
            }
        }
    }
    outcome(bad.is_empty(), format!("{}/{count} exact {}", count - bad.len(), bad.join("; ")))
}

fn ac2() -> Outcome {
    let spec = ProcessSpec::jackpot(0.5, 11);
    let s = estimate_hitting_time(&spec, 100_000, CAP, DEFAULT_SEED).unwrap();
    let exact = exact_hitting_time_markov(&spec).unwrap();
    let rel = (s.mean - 20.0).abs() / 20.0;
    outcome(
        rel <= 0.05 && exact == 20.0 && s.censored == 0,
        format!("mean {:.4} (rel err {:.4}), exact {exact}", s.mean, rel),
    )
}

fn ac3() -> Outcome {
    let grid: Vec<f64> = (1..=20).map(|i| i as f64 / 20.0).collect();
    let report = mean_tail_exact_check(200, &grid).unwrap();
    let mut oracle_min = f64::INFINITY;
    for k in 1..=200u64 {
        let floor = 1.0 / k as f64;
        for p in std::iter::once(floor).chain(grid.iter().copied().filter(|&p| p >= floor)) {
            let kp = k as f64 * p;
            let t = if (kp - kp.round()).abs() < 1e-9 { kp.round() } else { kp.ceil() } as usize;
            let tail: f64 = pmf_direct(k, p)[t..].iter().sum();
            oracle_min = oracle_min.min(tail);
        }
    }
    outcome(
        report.passed() && oracle_min >= 0.25 && (report.min_tail - oracle_min).abs() < 1e-9,
        format!(
            "{} cases, {} violations, min tail {:.6} at {:?} (oracle {:.6})",
            report.checked,
            report.violations.len(),
            report.min_tail,
            report.argmin,
            oracle_min
        ),
    )
}

fn ac4() -> Outcome {
    const TOL: f64 = 1e-12;
    let grid: Vec<f64> = (1..=10).map(|i| i as f64 / 10.0).collect();
    let (mut cases, mut fails, mut disagree) = (0u64, Vec::new(), 0u64);
    let mut min_slack = f64::INFINITY;
    for k in 1..=500u64 {
        let floor = 1.0 / k as f64;
        for p in std::iter::once(floor).chain(grid.iter().copied().filter(|&p| p >= floor)) {
            let e = exact_binomial_g_expectation(k, p).unwrap();
            let oracle: f64 = pmf_direct(k, p)
                .iter()
                .enumerate()
                .map(|(i, q)| if i == 0 { 0.0 } else { q * i as f64 * (i as f64).ln() })
                .sum();
            if (e - oracle).abs() > 1e-9 * oracle.abs().max(1.0) {
                disagree += 1;
            }
            let kp = k as f64 * p;
            let gm = if kp == 0.0 { 0.0 } else { kp * kp.ln() };
            let lo = gm + (1.0 - p) / 2.0 - (1.0 - p) * (1.0 - 2.0 * p) / (6.0 * kp);
            let hi = gm + (1.0 - p);
            min_slack = min_slack.min((e - lo).min(hi - e));
            cases += 1;
            if e < lo - TOL || e > hi + TOL {
                fails.push(format!("k={k} p={p}: {e} ∉ [{lo}, {hi}]"));
            }
        }
    }
    outcome(
        fails.is_empty() && disagree == 0,
        format!(
            "{cases} cases, {} outside, {disagree} oracle disagreements, min slack {min_slack:.3e} {}",
            fails.len(),
            fails.iter().take(3).cloned().collect::<Vec<_>>().join("; ")
        ),
    )
}

fn ac5() -> Outcome {
    const TOL: f64 = 1e-12;
    let mut bad = 0u64;
    let mut points = 0u64;
    for i in 1..=1000 {
        let a = i as f64 / 10.0;
        for j in 0..=400 {
            let x = j as f64 / 2.0;
            let gx = g(x).unwrap();
            points += 1;
            if taylor_lower(a, x) > gx + TOL || gx > taylor_upper(a, x) + TOL {
                bad += 1;
            }
        }
    }
    outcome(bad == 0, format!("{points} grid points, {bad} violations"))
}

fn describe(v: &Verdict) -> String {
    format!(
        "p̂/mean {:.5} ± {:.5} (n={}, censored {}) vs bound {:.5}: {:?}",
        v.empirical.mean, v.empirical.stderr, v.empirical.trials, v.empirical.censored, v.bound, v.status
    )
}

fn mean_verdict(spec: &ProcessSpec, report: &updrift::bounds::BoundReport, trials: u64) -> Verdict {
    let s = estimate_hitting_time(spec, trials, CAP, DEFAULT_SEED).unwrap();
    check_theorem(report, &s, Direction::UpperBoundsMean).unwrap()
}

fn ac6() -> Outcome {
    let spec = ProcessSpec::clamped(2000, 0.2, 100, 0.05);
    let report = thm1_bound(0.2, 100, 0.05, 2000);
    let v = mean_verdict(&spec, &report, 10_000);
    let main_ok = v.status == VerdictStatus::Consistent && v.empirical.censored == 0;

    let mut grid: Vec<ProcessSpec> = Vec::new();
    for (k, delta, n) in [(20, 0.5, 5), (40, 0.5, 10), (60, 0.25, 12), (60, 1.0, 20), (30, 1.0, 8)] {
        grid.push(ProcessSpec::clamped(k, delta, n, 0.5));
    }
    grid.push(ProcessSpec::with_zero(40, 0.5, 10, 0.5, ZeroLaw::Binomial { trials: 40, p: 0.025 }).starting_at(0));
    grid.push(ProcessSpec::with_zero(60, 1.0, 20, 0.5, ZeroLaw::PointMass { value: 2 }).starting_at(0));
    grid.push(ProcessSpec::fresh_start(60, 1.0, 20, 8, 0.3));
    grid.push(ProcessSpec::unbiased(40, 10, 0.5));
    grid.push(ProcessSpec::unbiased(60, 20, 0.5).starting_at(3));
    let mut mismatches = Vec::new();
    for (i, spec) in grid.iter().enumerate() {
        let exact = exact_hitting_time_markov(spec).unwrap();
        let s = estimate_hitting_time(spec, 10_000, CAP, DEFAULT_SEED + i as u64).unwrap();
        if s.censored > 0 || (s.mean - exact).abs() > 3.0 * s.stderr {
            mismatches.push(format!("{} k={} n={}: {:.3}±{:.3} vs {:.3}", spec.kind, spec.k, spec.target_n, s.mean, s.stderr, exact));
        }
    }
    outcome(
        main_ok && mismatches.is_empty(),
        format!("{}; oracle grid {}/{} within 3 se {}", describe(&v), grid.len() - mismatches.len(), grid.len(), mismatches.join("; ")),
    )
}

fn ac7() -> Outcome {
    let spec = ProcessSpec::clamped(200, 3.0, 40, 0.5);
    let report = thm1_bound(3.0, 40, 0.5, 200);
    let oracle = 2.6 * 40f64.ln() / 4f64.ln() + 81.0;
    let v = mean_verdict(&spec, &report, 10_000);
    outcome(
        (report.bound - oracle).abs() < 1e-12 && v.status == VerdictStatus::Consistent,
        describe(&v),
    )
}

fn ac8() -> Outcome {
    let small = ProcessSpec::clamped(4000, 1.0, 1000, 0.5);
    let v1 = return_probability_check(&small, 10_000, CAP, DEFAULT_SEED).unwrap();
    let large = ProcessSpec::clamped(1000, 3.0, 200, 0.5);
    let v2 = return_probability_check(&large, 10_000, CAP, DEFAULT_SEED).unwrap();
    let e = std::f64::consts::E;
    let ok = |v: &Verdict, c: f64| {
        v.status == VerdictStatus::Consistent && v.empirical.trials == 10_000 && (v.bound - c).abs() < 1e-12 && v.flags.is_empty()
    };
    outcome(
        ok(&v1, 0.7218) && ok(&v2, 1.0 / (e * (e - 1.0))) && v2.bound < 0.22,
        format!("δ=1 hi=100 lo=50: {}; δ=3 hi=32 lo=31: {}", describe(&v1), describe(&v2)),
    )
}

fn ac9() -> Outcome {
    let spec = ProcessSpec::clamped(4000, 1.0, 1000, 0.5);
    let v = climb_success_check(&spec, 100, 10_000, DEFAULT_SEED).unwrap();
    outcome(
        v.status == VerdictStatus::Consistent && v.bound == 0.2782 && v.flags.is_empty(),
        describe(&v),
    )
}

fn ac10() -> Outcome {
    let spec = ProcessSpec::clamped(4000, 1.0, 1000, 0.5);
    let mut parts = Vec::new();
    let mut ok = true;
    for d in [100u64, 338] {
        let v = dip_probability_check(&spec, d, 10_000, DEFAULT_SEED).unwrap();
        let oracle = (-(d as f64) / 169.0).exp();
        ok &= v.status == VerdictStatus::Consistent && (v.bound - oracle).abs() < 1e-15 && v.flags.is_empty();
        parts.push(format!("D={d}: {}", describe(&v)));
    }
    outcome(ok, parts.join("; "))
}

fn ac11() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for (delta, n, k) in [(0.5, 50u64, 200u64), (2.0, 40, 200)] {
        let law = ZeroLaw::Binomial { trials: k, p: 1.0 / k as f64 };
        let d0 = process::d0(delta, n);
        let e0 = law.expected_min(d0).unwrap();
        // Oracle for E[min{Y, D₀}] with Y ~ Bin(k, 1/k).
        let oracle: f64 = pmf_direct(k, 1.0 / k as f64)
            .iter()
            .enumerate()
            .map(|(i, q)| q * (i as u64).min(d0) as f64)
            .sum();
        let spec = ProcessSpec::with_zero(k, delta, n, 0.5, law).starting_at(0);
        let report = thm2_bound(delta, n, 0.5, k, e0).unwrap();
        let v = mean_verdict(&spec, &report, 10_000);
        ok &= (e0 - oracle).abs() < 1e-12 && v.status == VerdictStatus::Consistent;
        parts.push(format!("δ={delta}: E0={e0:.6}, {}", describe(&v)));
    }
    outcome(ok, parts.join("; "))
}

fn ac12() -> Outcome {
    let spec = ProcessSpec::fresh_start(4096, 1.0, 1024, 128, 0.25);
    let report = thm3_bound(1.0, 1024, 4096, 128, 0.25);
    let oracle = 3.6 * (1.0 / 0.25 + 3.0 * 3.0);
    let v = mean_verdict(&spec, &report, 10_000);
    outcome(
        (report.bound - oracle).abs() < 1e-12 && (oracle - 46.8).abs() < 1e-12 && v.status == VerdictStatus::Consistent,
        describe(&v),
    )
}

fn ea_mean(config: &EaConfig, runs: u64, cap: u64) -> MonteCarloSummary {
    let recs = run_trials(0..runs, config.seed, |rng| ea_run(config, cap, rng)).unwrap();
    let times: Vec<Option<u64>> = recs.iter().map(|r| r.hit.then_some(r.evaluations)).collect();
    MonteCarloSummary::from_times(&times, config.seed)
}

fn ac13() -> Outcome {
    let n = 50;
    let pmut = 1.0 / (10.0 * n as f64);
    let fitness = FitnessKind::OneMax;
    let start = tournament_model(&fitness, n, 1000, 0.5, pmut).unwrap();
    let s = suggest_lambda(&start, TheoremId::LevelNew).unwrap();
    let model = LevelModel { lambda: s.lambda, ..start };
    let report = level_new_bound(&model).unwrap();
    let config = EaConfig {
        n,
        lambda: s.lambda as usize,
        mu: None,
        selection: SelectionKind::Tournament2,
        pmut,
        fitness,
        seed: DEFAULT_SEED,
    };
    let summary = ea_mean(&config, 20, 1_000_000);
    let t0 = report.auxiliary["t0"];
    let v = check_theorem(&report, &summary, Direction::UpperBoundsMean).unwrap();
    // Guard against a missing λ factor: the bound without it must differ.
    let unit_ok = (report.bound - 8.0 * s.lambda as f64 * t0).abs() <= 1e-9 * report.bound;
    outcome(
        v.status == VerdictStatus::Consistent && unit_ok && s.converged,
        format!("λ={} (λ_min {:.1}), δ={:.4}, t0={:.4e}; {}", s.lambda, s.lambda_min, model.delta, t0, describe(&v)),
    )
}

fn ac14() -> Outcome {
    let n = 32;
    let pmut = 1.0 / (2.0 * n as f64);
    let fitness = FitnessKind::LeadingOnes;
    let model = ranking_model(&fitness, n, 256, 16, 0.25, pmut).unwrap();
    let report = level_large_delta_bound(&model).unwrap();
    let config = EaConfig {
        n,
        lambda: 256,
        mu: Some(16),
        selection: SelectionKind::RankingMuComma,
        pmut,
        fitness,
        seed: DEFAULT_SEED,
    };
    let summary = ea_mean(&config, 200, 1_000_000);
    let t0 = report.auxiliary["t0"];
    let v = check_theorem(&report, &summary, Direction::UpperBoundsMean).unwrap();
    outcome(
        v.status == VerdictStatus::Consistent && (report.bound - 9.0 * 256.0 * t0).abs() <= 1e-9 * report.bound,
        format!("δ={:.4}, t0={:.2}, λ_min={:.1}; {}", model.delta, t0, report.auxiliary["lambda_min"], describe(&v)),
    )
}

fn ac15() -> Outcome {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut parts = Vec::new();
    let mut censored = 0;
    for n in [16usize, 32, 64] {
        let nf = n as f64;
        let config = EaConfig {
            n,
            lambda: (nf * nf.ln()).ceil() as usize,
            mu: None,
            selection: SelectionKind::FitnessProportionate,
            pmut: 1.0 / (6.0 * nf * nf),
            fitness: FitnessKind::OneMax,
            seed: DEFAULT_SEED,
        };
        let s = ea_mean(&config, 50, 10_000_000);
        censored += s.censored;
        xs.push(nf.ln());
        ys.push(s.mean.ln());
        parts.push(format!("n={n}: {:.4e}", s.mean));
    }
    let (slope, _) = ols(&xs, &ys);
    outcome(
        (1.5..=4.0).contains(&slope) && censored == 0,
        format!("slope {slope:.3}; {}", parts.join(", ")),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Duration); 15] = [
        ("deterministic hitting time", ac1, Duration::from_secs(1)),
        ("jackpot mean and closed form", ac2, Duration::from_secs(10)),
        ("binomial tail at the mean", ac3, Duration::from_secs(60)),
        ("g-drift sandwich", ac4, Duration::from_secs(120)),
        ("Taylor bounds on g", ac5, Duration::from_secs(1)),
        ("first up-drift bound, δ ≤ 1", ac6, Duration::from_secs(300)),
        ("first up-drift bound, δ > 1", ac7, Duration::from_secs(60)),
        ("return probabilities", ac8, Duration::from_secs(300)),
        ("climb success", ac9, Duration::from_secs(120)),
        ("dip probability", ac10, Duration::from_secs(120)),
        ("up-drift with zero state", ac11, Duration::from_secs(300)),
        ("fresh-start up-drift", ac12, Duration::from_secs(60)),
        ("level-based, tournament (λ,λ) EA", ac13, Duration::from_secs(600)),
        ("level-based δ > 1, ranking (μ,λ) EA", ac14, Duration::from_secs(600)),
        ("fitness-proportionate scaling slope", ac15, Duration::from_secs(1800)),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let o = run();
        let elapsed = t.elapsed();
        let pass = o.pass && elapsed < budget;
        if !pass {
            failed += 1;
        }
        println!(
            "AC{:02} {} {name}: {} [{:.2}s / {}s]",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            o.detail.trim(),
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!("acceptance: {} passed, {failed} failed", 15 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
