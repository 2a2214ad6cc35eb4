#![no_main]

use libfuzzer_sys::fuzz_target;
use updrift::bounds::TheoremId;
use updrift::ea::SelectionKind;
use updrift::ProcessKind;

fuzz_target!(|data: &str| {
    if let Ok(id) = data.parse::<TheoremId>() {
        assert_eq!(id.to_string().parse::<TheoremId>().unwrap(), id);
    }
    if let Ok(kind) = data.parse::<ProcessKind>() {
        assert_eq!(kind.to_string().parse::<ProcessKind>().unwrap(), kind);
    }
    if let Ok(sel) = data.parse::<SelectionKind>() {
        assert_eq!(sel.to_string().parse::<SelectionKind>().unwrap(), sel);
    }
});
