mod args;
mod commands;
mod report;

use std::process::ExitCode;

use clap::Parser;

use crate::args::Cli;
use crate::report::{emit, Failure};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (config, outcome) = commands::run(&cli);
    let code = match &outcome {
        Ok(_) => 0,
        Err(f) => {
            eprintln!("tvlab: {}", f.message);
            f.kind.exit_code()
        }
    };
    match emit(&config, &outcome, cli.output.as_deref()) {
        Ok(()) => ExitCode::from(code),
        Err(e) => {
            eprintln!("tvlab: cannot write report: {e}");
            ExitCode::from(Failure::input(e.to_string()).kind.exit_code())
        }
    }
}
