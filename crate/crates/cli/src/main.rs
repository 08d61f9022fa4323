use std::io;
use std::process::ExitCode;

use clap::Parser;
use projmeas_cli::config::{Cli, RunConfig};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result =
        RunConfig::try_from(cli).and_then(|cfg| projmeas_cli::run(&cfg, &mut io::stdout().lock()));
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("projmeas: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
