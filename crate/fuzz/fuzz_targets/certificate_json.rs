#![no_main]

use chainmail::lspace::{
    certificate_from_json, certificate_to_json, generalized_from_json, generalized_to_json, verify_certificate,
    verify_generalized,
};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    // Verification recomputes determinants; keep inputs small.
    if data.len() > 8192 {
        return;
    }
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(cert) = certificate_from_json(text) {
        let back = certificate_from_json(&certificate_to_json(&cert)).expect("written certificate parses");
        assert_eq!(back, cert);
        let _ = verify_certificate(&cert);
    }
    if let Ok(cert) = generalized_from_json(text) {
        let back = generalized_from_json(&generalized_to_json(&cert)).expect("written certificate parses");
        assert_eq!(back, cert);
        let _ = verify_generalized(&cert);
    }
});
