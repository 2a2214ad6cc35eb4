#![no_main]

use libfuzzer_sys::fuzz_target;
use updrift::ea::{leadingones, onemax, Bitstring};

fuzz_target!(|data: &str| {
    if let Ok(x) = data.parse::<Bitstring>() {
        let s = x.to_string();
        assert_eq!(s.parse::<Bitstring>().unwrap(), x);
        assert!(leadingones(&x) <= onemax(&x));
        assert_eq!(onemax(&x) as usize, s.bytes().filter(|&b| b == b'1').count());
    }
});
