//! `cores`: constructions, enumeration and claim verification for
//! simultaneous core partitions.

mod cache;
mod commands;
mod render;

use std::process::ExitCode;

use clap::Parser;

use commands::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(run) => {
            print!("{}", run.stdout);
            if let Some(note) = run.stderr {
                eprint!("{note}");
            }
            ExitCode::from(run.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
