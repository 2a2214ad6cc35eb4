#![no_main]

use libfuzzer_sys::fuzz_target;
use updrift::ZeroLaw;

fuzz_target!(|data: &str| {
    if let Ok(law) = data.parse::<ZeroLaw>() {
        let _ = law.validate();
        let again: ZeroLaw = law.to_string().parse().expect("display output must parse");
        assert_eq!(again.to_string(), law.to_string());
        let _ = law.expected_min(64);
    }
});
