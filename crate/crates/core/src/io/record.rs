use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::sampler::{CiMode, EstimateSummary, SampleConfig};

/// Column order of the CSV rendering. JSON objects use the same key order,
/// with the optional `phi` array last.
pub const CSV_COLUMNS: [&str; 18] = [
    "input",
    "n",
    "m",
    "source",
    "sink",
    "p",
    "B",
    "seed",
    "ci_level",
    "ci_mode",
    "mean",
    "sd",
    "ci_low",
    "ci_high",
    "disconnected_count",
    "exact_flow",
    "duration_seconds",
    "version",
];

/// The outcome of one exact or estimated flow computation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub input: String,
    pub n: usize,
    pub m: usize,
    pub source: String,
    pub sink: String,
    pub p: f64,
    #[serde(rename = "B")]
    pub samples: usize,
    pub seed: u64,
    pub ci_level: f64,
    pub ci_mode: CiMode,
    pub mean: f64,
    pub sd: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub disconnected_count: usize,
    /// Exact flow of the full graph, when it was computed alongside.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact_flow: Option<f64>,
    pub duration_seconds: f64,
    pub version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<Vec<f64>>,
}

impl RunRecord {
    pub fn sample_config(&self) -> SampleConfig {
        SampleConfig::new(self.p, self.samples, self.seed).with_ci(self.ci_level, self.ci_mode)
    }

    pub fn summary(&self) -> EstimateSummary {
        EstimateSummary {
            mean: self.mean,
            sd: self.sd,
            ci_low: self.ci_low,
            ci_high: self.ci_high,
            ci_level: self.ci_level,
            ci_mode: self.ci_mode,
        }
    }

    fn csv_row(&self) -> Vec<String> {
        vec![
            self.input.clone(),
            self.n.to_string(),
            self.m.to_string(),
            self.source.clone(),
            self.sink.clone(),
            self.p.to_string(),
            self.samples.to_string(),
            self.seed.to_string(),
            self.ci_level.to_string(),
            self.ci_mode.to_string(),
            self.mean.to_string(),
            self.sd.to_string(),
            self.ci_low.to_string(),
            self.ci_high.to_string(),
            self.disconnected_count.to_string(),
            self.exact_flow.map(|f| f.to_string()).unwrap_or_default(),
            self.duration_seconds.to_string(),
            self.version.clone(),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
        })
    }
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(format!("unknown output format '{other}' (expected json or csv)")),
        }
    }
}

fn csv_error(e: csv::Error) -> std::io::Error {
    match e.into_kind() {
        csv::ErrorKind::Io(e) => e,
        other => std::io::Error::other(format!("{other:?}")),
    }
}

/// Writes one record: a JSON object, or a CSV header plus one row.
///
/// Floats are written in shortest round-trip form, so parsing the JSON back
/// yields an identical record.
pub fn write_run_record<W: Write>(record: &RunRecord, format: OutputFormat, sink: W) -> std::io::Result<()> {
    match format {
        OutputFormat::Json => write_json(record, sink),
        OutputFormat::Csv => write_csv(std::slice::from_ref(record), sink),
    }
}

/// Writes several records: a JSON array, or a CSV header plus one row each.
pub fn write_run_records<W: Write>(records: &[RunRecord], format: OutputFormat, sink: W) -> std::io::Result<()> {
    match format {
        OutputFormat::Json => write_json(records, sink),
        OutputFormat::Csv => write_csv(records, sink),
    }
}

fn write_json<T: Serialize + ?Sized, W: Write>(value: &T, mut sink: W) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut sink, value)?;
    sink.write_all(b"\n")?;
    sink.flush()
}

fn write_csv<W: Write>(records: &[RunRecord], sink: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(CSV_COLUMNS).map_err(csv_error)?;
    for r in records {
        w.write_record(r.csv_row()).map_err(csv_error)?;
    }
    w.flush()
}

pub fn read_run_record<R: Read>(reader: R) -> serde_json::Result<RunRecord> {
    serde_json::from_reader(reader)
}

pub fn read_run_records<R: Read>(reader: R) -> serde_json::Result<Vec<RunRecord>> {
    serde_json::from_reader(reader)
}
