use proptest::prelude::*;
use updrift_cli::config::{BoundArgs, BoundParams};
use updrift_cli::{Command, ExperimentConfig};

fn finite() -> impl Strategy<Value = f64> {
    -1e12f64..1e12
}

proptest! {
    #[test]
    fn bound_config_round_trips(
        delta in proptest::option::of(finite()),
        n in proptest::option::of(0u64..i64::MAX as u64),
        z in proptest::collection::vec(finite(), 0..5),
        seed in any::<u32>(),
        trials in proptest::option::of(0u64..1 << 40),
    ) {
        let mut cfg = ExperimentConfig::new(Command::Bound(BoundArgs {
            theorem: "thm1".parse().unwrap(),
            params: BoundParams { delta, n, z, ..Default::default() },
        }));
        cfg.seed = seed as u64;
        cfg.trials = trials;
        let text = cfg.to_toml().unwrap();
        prop_assert_eq!(ExperimentConfig::from_toml(&text).unwrap(), cfg);
    }
}
