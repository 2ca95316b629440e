//! Command-line front end for `simflow-core`.

pub mod args;
pub mod commands;
pub mod error;
pub mod format;

use std::io::Write;

use clap::Parser;

use crate::args::{Cli, Command};
use crate::commands::Report;
use crate::error::CliError;

/// Runs one invocation, printing JSON to `out` and diagnostics to `err`.
/// Returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { error::EXIT_PARSE } else { 0 };
        }
    };
    let results = match &cli.command {
        Command::Maxflow(a) => commands::maxflow(a),
        Command::Mincut(a) => commands::mincut(a),
        Command::Brute(a) => vec![commands::brute(a)],
        Command::Gen(a) => vec![commands::gen(a)],
        Command::Verify(a) => vec![commands::verify(a)],
    };
    emit(results, out, err)
}

fn emit(results: Vec<Result<Report, CliError>>, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let mut code = 0;
    for r in results {
        match r {
            Ok(rep) => {
                let _ = writeln!(out, "{}", rep.json);
                let _ = writeln!(err, "{}", rep.summary);
                for w in rep.warnings {
                    let _ = writeln!(err, "warning: {w}");
                }
            }
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                if code == 0 {
                    code = e.code;
                }
            }
        }
    }
    code
}
