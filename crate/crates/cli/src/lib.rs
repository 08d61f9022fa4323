//! Command-line front end for the `projmeas` library: closed-form reports,
//! figure data, Monte Carlo verification and the large-d information limit.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::fs::{self, File};
use std::io::{BufWriter, Write};

use config::{CommandKind, OutputTarget, RunConfig};
use error::{CliError, CliResult};
use output::Table;

/// Exit status of a run whose verification found a mismatch.
pub const EXIT_VERIFY_FAILED: i32 = 1;

fn emit(table: &Table, config: &RunConfig, stdout: &mut dyn Write) -> CliResult<()> {
    match &config.output {
        OutputTarget::File(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            table.write(config.format, &mut file)?;
            file.flush()?;
        }
        _ => table.write(config.format, &mut *stdout)?,
    }
    Ok(())
}

/// Executes `config`, writing tables to `stdout` unless a file is
/// configured. Returns the process exit status.
pub fn run(config: &RunConfig, stdout: &mut dyn Write) -> CliResult<i32> {
    config.validate()?;
    match config.command {
        CommandKind::Report => emit(&commands::report_table(config)?, config, stdout)?,
        CommandKind::Limits => emit(&commands::limits_table(&config.dims)?, config, stdout)?,
        CommandKind::Figures => {
            let OutputTarget::Directory(dir) = &config.output else {
                return Err(CliError::usage("figures needs --out <dir>"));
            };
            fs::create_dir_all(dir)?;
            for (stem, table) in commands::figure_tables(&config.dims)? {
                let path = dir.join(format!("{stem}.{}", config.format.extension()));
                let mut file = BufWriter::new(File::create(&path)?);
                table.write(config.format, &mut file)?;
                file.flush()?;
            }
        }
        CommandKind::Verify => {
            let rows = match config.threads {
                Some(n) => rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()?
                    .install(|| commands::verify_rows(config))?,
                None => commands::verify_rows(config)?,
            };
            emit(&commands::verify_table(&rows), config, stdout)?;
            if rows.iter().any(|r| !r.passes(commands::MAX_Z)) {
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
    }
    stdout.flush()?;
    Ok(0)
}
