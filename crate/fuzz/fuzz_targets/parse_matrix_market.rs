#![no_main]

use flowsample::io::{parse_matrix_market, ParseOptions};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&flag, text)) = data.split_first() else {
        return;
    };
    let opts = ParseOptions {
        directed: flag & 1 == 0,
        default_capacity: 1.0,
    };
    if let Ok(parsed) = parse_matrix_market(text, &opts) {
        assert!(parsed.graph.validate().is_empty());
    }
});
