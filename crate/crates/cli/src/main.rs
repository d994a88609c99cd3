use std::process::ExitCode;

use clap::Parser;
use farloc_cli::{run, Cli};

fn main() -> ExitCode {
    match Cli::parse().into_config().and_then(|c| run(&c)) {
        Ok(report) => {
            print!("{}", report.summary);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
