#![no_main]

use chainmail::CrossingCoefficient;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(c) = text.parse::<CrossingCoefficient>() else {
        return;
    };
    assert_eq!(c.to_string().parse::<CrossingCoefficient>().unwrap(), c);
});
