use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    ExitCode::from(glbc::cli::run(glbc::cli::Cli::parse()))
}
