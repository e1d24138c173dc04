use std::io;
use std::process::ExitCode;

use clap::Parser;
use depcoef::cli::{run, Cli};

fn main() -> ExitCode {
    let config = Cli::parse().into_config();
    let stdout = io::stdout().lock();
    match run(&config, stdout) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("depcoef: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
