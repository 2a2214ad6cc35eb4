#![no_main]

use libfuzzer_sys::fuzz_target;
use updrift_cli::Cli;

// Argument parsing only; nothing is executed.
fuzz_target!(|data: &str| {
    let args = std::iter::once("updrift").chain(data.split_whitespace());
    if let Ok(cli) = <Cli as clap::Parser>::try_parse_from(args) {
        if cli.config.is_none() {
            let _ = cli.into_config();
        }
    }
});
