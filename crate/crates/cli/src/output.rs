use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use flowsample::io::{write_edge_list, write_run_record, write_run_records, OutputFormat, RunRecord};
use flowsample::Graph;
use tempfile::NamedTempFile;

use crate::commands::BenchRecord;

/// Streams `write` to `path` through a temporary file in the same
/// directory, so a failed run leaves no partial file. Without a path the
/// output goes to stdout.
pub fn emit(path: Option<&Path>, write: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> Result<()> {
    match path {
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write(&mut lock)?;
            lock.flush()?;
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(d) if !d.as_os_str().is_empty() => d,
                _ => Path::new("."),
            };
            if !dir.is_dir() {
                fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
            }
            let tmp = NamedTempFile::new_in(dir).with_context(|| format!("cannot write to {}", dir.display()))?;
            let mut out = BufWriter::new(tmp);
            write(&mut out)?;
            let tmp = out.into_inner().map_err(io::IntoInnerError::into_error)?;
            tmp.as_file().sync_all()?;
            tmp.persist(path)
                .with_context(|| format!("cannot write {}", path.display()))?;
        }
    }
    Ok(())
}

pub fn record(rec: &RunRecord, format: OutputFormat, out: &mut dyn Write) -> io::Result<()> {
    write_run_record(rec, format, out)
}

pub fn records(recs: &[RunRecord], format: OutputFormat, out: &mut dyn Write) -> io::Result<()> {
    write_run_records(recs, format, out)
}

pub fn bench(rows: &[BenchRecord], format: OutputFormat, out: &mut dyn Write) -> io::Result<()> {
    match format {
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, rows)?;
            writeln!(out)
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for row in rows {
                w.serialize(row)?;
            }
            w.flush()
        }
    }
}

pub fn graph(g: &Graph, out: &mut dyn Write) -> io::Result<()> {
    write_edge_list(g, out)
}
