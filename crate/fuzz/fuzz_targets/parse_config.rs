#![no_main]

use libfuzzer_sys::fuzz_target;
use updrift_cli::ExperimentConfig;

fuzz_target!(|data: &str| {
    if let Ok(cfg) = ExperimentConfig::from_toml(data) {
        let text = cfg.to_toml().expect("a parsed config must serialize");
        ExperimentConfig::from_toml(&text).expect("serialized config must parse");
    }
});
