use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use updrift::process::{self, step, ProcessSpec, Walker, ZeroLaw};
use updrift::rng::{seeded, trial_rng};
use updrift::verify::{estimate_hitting_time, exact_hitting_time_markov};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn clamped_never_leaves_one_to_k(seed in any::<u64>(), x in 1u64..50, delta in 0.05f64..1.0) {
        let spec = ProcessSpec::clamped(200, delta, 100, 0.5);
        let mut rng = seeded(seed);
        for _ in 0..20 {
            let y = step(&spec, x, &mut rng).unwrap();
            prop_assert!((1..=200).contains(&y));
        }
    }

    #[test]
    fn clamped_dominates_with_zero_under_coupling(seed in any::<u64>(), delta in 0.1f64..1.0) {
        // Same stream, same binomial draws: the clamped copy is max(1, ·) of the other.
        let clamped = ProcessSpec::clamped(120, delta, 40, 0.5);
        let zero = ProcessSpec::with_zero(120, delta, 40, 0.5, ZeroLaw::PointMass { value: 1 });
        for x in 1..20u64 {
            let a = step(&clamped, x, &mut seeded(seed)).unwrap();
            let b = step(&zero, x, &mut seeded(seed)).unwrap();
            prop_assert_eq!(a, b.max(1));
        }
    }

    #[test]
    fn same_seed_same_trajectory(seed in any::<u64>(), idx in 0u64..1000) {
        let spec = ProcessSpec::clamped(300, 0.3, 60, 0.5);
        let a = process::run_to_target(&spec, 10_000, &mut trial_rng(seed, idx)).unwrap();
        let b = process::run_to_target(&spec, 10_000, &mut trial_rng(seed, idx)).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn zero_law_round_trips(v in 0u64..1000, k in 1u64..500, p in 0.0f64..=1.0) {
        for law in [ZeroLaw::PointMass { value: v }, ZeroLaw::Binomial { trials: k, p }] {
            let back: ZeroLaw = law.to_string().parse().unwrap();
            prop_assert_eq!(back, law);
        }
    }
}

#[test]
fn with_zero_one_step_mean_matches_growth() {
    let spec = ProcessSpec::with_zero(1000, 0.5, 300, 0.5, ZeroLaw::PointMass { value: 1 });
    let x = 40u64;
    let trials = 200_000;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let sum: u64 = (0..trials).map(|_| step(&spec, x, &mut rng).unwrap()).sum();
    let mean = sum as f64 / trials as f64;
    // Var of Bin(1000, 0.06) is 56.4; stderr ≈ 0.0168.
    assert!((mean - 60.0).abs() < 0.1, "{mean}");
}

#[test]
fn deterministic_walker_keeps_real_track() {
    let spec = ProcessSpec::deterministic(0.5, 1000);
    let mut w = Walker::new(&spec);
    let mut rng = seeded(0);
    for t in 1..=5 {
        w.advance(&mut rng).unwrap();
        assert!((w.value() - 1.5f64.powi(t)).abs() < 1e-9);
        assert_eq!(w.state(), 1.5f64.powi(t).floor() as u64);
    }
}

#[test]
fn overflowing_probability_is_an_error() {
    let spec = ProcessSpec::clamped(10, 1.0, 20, 0.5);
    let err = step(&spec, 8, &mut seeded(0)).unwrap_err().to_string();
    assert!(err.contains("n-1 <= k/(1+delta)"), "{err}");
    assert!(spec.violated_preconditions().iter().any(|f| f == "n-1 <= k/(1+delta)"));
}

#[test]
fn monte_carlo_agrees_with_markov_on_small_grid() {
    let mut seed = 100;
    for k in [10u64, 30, 60] {
        for delta in [0.2, 0.6, 1.0] {
            let n = ((k as f64) / (1.0 + delta)).floor() as u64 / 2 + 2;
            let spec = ProcessSpec::clamped(k, delta, n, 0.5);
            let exact = exact_hitting_time_markov(&spec).unwrap();
            let s = estimate_hitting_time(&spec, 4000, 1_000_000, seed).unwrap();
            seed += 1;
            assert!((s.mean - exact).abs() <= 4.0 * s.stderr.max(1e-9), "k={k} δ={delta}: {} vs {exact}", s.mean);
        }
    }
}

#[test]
fn fresh_start_starts_at_zero() {
    let spec = ProcessSpec::fresh_start(4096, 1.0, 1024, 128, 0.25);
    assert_eq!(spec.x0, 0);
    let mut rng = seeded(9);
    for _ in 0..100 {
        let y = step(&spec, 0, &mut rng).unwrap();
        assert!(y == 0 || y == 128);
    }
}
