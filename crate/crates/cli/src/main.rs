use std::process::ExitCode;

use clap::Parser;
use pq_cli::{execute, render, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(outcome) => {
            println!("{}", render(&outcome, cli.output));
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            eprintln!("pq: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
