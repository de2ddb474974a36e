#![no_main]

use flowsample::io::{parse_edge_list, write_edge_list, ParseOptions};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&flag, text)) = data.split_first() else {
        return;
    };
    let opts = ParseOptions {
        directed: flag & 1 == 0,
        default_capacity: 1.0,
    };
    let Ok(parsed) = parse_edge_list(text, &opts) else {
        return;
    };
    assert!(parsed.graph.validate().is_empty());
    assert!(parsed.labels.is_bijective());

    // Accepted graphs survive the canonical writer.
    let mut buf = Vec::new();
    write_edge_list(&parsed.graph, &mut buf).unwrap();
    let again = parse_edge_list(buf.as_slice(), &ParseOptions::default()).unwrap();
    assert_eq!(again.graph, parsed.graph);
});
