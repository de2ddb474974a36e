#![no_main]

use flowsample::io::{read_run_record, write_run_record, OutputFormat};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(record) = read_run_record(data) else {
        return;
    };
    let _ = record.sample_config().validate();
    let mut json = Vec::new();
    write_run_record(&record, OutputFormat::Json, &mut json).unwrap();
    let mut csv = Vec::new();
    write_run_record(&record, OutputFormat::Csv, &mut csv).unwrap();
});
