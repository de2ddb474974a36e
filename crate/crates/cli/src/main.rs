use std::process::ExitCode;

use clap::Parser;
use flowsample_cli::{run, thread_count, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = thread_count().and_then(|threads| {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
        run(&cli)
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("flowsample: {e:#}");
            ExitCode::FAILURE
        }
    }
}
