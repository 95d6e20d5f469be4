#![no_main]

use chainmail::diagram::{diagram_invariants, goeritz_det, PdCode};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(pd) = PdCode::parse(text) else {
        return;
    };
    let back = PdCode::parse(&pd.to_text()).expect("printed PD parses");
    assert_eq!(back, pd);
    // Parsed codes are validated, so the invariants must not fail.
    let _ = diagram_invariants(&pd).expect("invariants of a valid PD");
    let _ = goeritz_det(&pd);
});
