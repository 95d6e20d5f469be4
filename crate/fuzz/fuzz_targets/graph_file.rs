#![no_main]

use chainmail::io::{parse_graph_file, write_graph_file};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(input) = parse_graph_file(text) else {
        return;
    };
    let written = write_graph_file(&input);
    let back = parse_graph_file(&written).expect("written file parses");
    assert_eq!(back, input);
    assert_eq!(write_graph_file(&back), written);
});
