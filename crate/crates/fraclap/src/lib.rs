//! Command-line front end and file formats for `fraclap-core`.

pub mod cli;
pub mod commands;
pub mod error;
pub mod grid;
pub mod output;
pub mod verify;

use std::path::Path;

use cli::{Cli, Command};
use error::{CliError, CliResult};
use output::Format;

/// Environment variable overriding the worker thread count.
pub const THREADS_ENV: &str = "FRACLAP_THREADS";

/// Sizes the global rayon pool from [`THREADS_ENV`] when it is set.
pub fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got '{raw}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot size thread pool: {e}")))
}

fn emit(table: &output::Table, format: Format, out: Option<&Path>) -> CliResult<()> {
    table.emit(format, out).map_err(CliError::from)
}

pub fn execute(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Matrix(a) => emit(&commands::matrix(a)?, a.output.format, a.output.out.as_deref()),
        Command::Dispersion(a) => emit(&commands::dispersion(a)?, a.output.format, a.output.out.as_deref()),
        Command::Kernel(a) => emit(&commands::kernel(a)?, a.output.format, a.output.out.as_deref()),
        Command::Converge(a) => emit(&commands::converge(a)?, a.output.format, a.output.out.as_deref()),
        Command::Verify(a) => {
            if a.list {
                for c in verify::checks() {
                    println!("{:<22} {}", c.name, c.description);
                }
                return Ok(());
            }
            if !a.perturb.is_finite() {
                return Err(CliError::Usage("--perturb must be finite".into()));
            }
            let ctx = verify::Context { perturb: a.perturb };
            let results = verify::run(&a.only, &ctx).map_err(CliError::Usage)?;
            emit(&verify::report(&results, &ctx), a.format, a.out.as_deref())?;
            match results.iter().filter(|r| !r.pass).count() {
                0 => Ok(()),
                n => Err(CliError::Verification(n)),
            }
        }
    }
}
