//! Command-line front end for `flowsample`.

pub mod args;
pub mod commands;
pub mod input;
pub mod output;

use anyhow::{Context, Result};

pub use args::{Cli, Command};

/// Environment variable capping the worker threads; 0 or unset means one
/// per core.
pub const THREADS_ENV: &str = "FLOWSAMPLE_THREADS";

pub fn thread_count() -> Result<usize> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("{THREADS_ENV}={v:?} is not a thread count")),
        Err(_) => Ok(0),
    }
}

pub fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Exact(a) => {
            let rec = commands::exact(a)?;
            output::emit(a.output.out.as_deref(), |w| {
                output::record(&rec, a.output.out_format, w)
            })
        }
        Command::Estimate(a) => {
            let rec = commands::estimate(a)?;
            output::emit(a.output.out.as_deref(), |w| {
                output::record(&rec, a.output.out_format, w)
            })
        }
        Command::SweepB(a) => {
            let recs = commands::sweep_b(a)?;
            output::emit(a.output.out.as_deref(), |w| {
                output::records(&recs, a.output.out_format, w)
            })
        }
        Command::SweepP(a) => {
            let recs = commands::sweep_p(a)?;
            output::emit(a.output.out.as_deref(), |w| {
                output::records(&recs, a.output.out_format, w)
            })
        }
        Command::Bench(a) => {
            let rows = commands::bench(a)?;
            for row in &rows {
                if let Some(e) = &row.error {
                    eprintln!("warning: n={}: {e}", row.n);
                }
            }
            output::emit(a.out.as_deref(), |w| output::bench(&rows, a.out_format, w))
        }
        Command::Generate(a) => {
            let g = commands::generate(a)?;
            output::emit(a.out.as_deref(), |w| output::graph(&g, w))
        }
    }
}
