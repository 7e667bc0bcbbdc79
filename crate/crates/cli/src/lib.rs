//! File formats, reports and the command-line front end for `convkit-core`.

pub mod args;
pub mod commands;
pub mod error;
pub mod format;
pub mod report;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

use crate::args::Cli;
use crate::error::CliResult;
use crate::report::RunReport;

/// Runs a parsed command and writes `--out` / `--report` files.
pub fn run(cli: &Cli) -> CliResult<RunReport> {
    let report = commands::dispatch(cli)?;
    if let Some(path) = &cli.common.out {
        format::write_json(path, &report.outputs)?;
    }
    if let Some(path) = &cli.common.report {
        let value = serde_json::to_value(&report).expect("reports always serialize");
        format::write_json(path, &value)?;
    }
    Ok(report)
}

/// Parses `args`, runs the command, prints the summary and returns the exit code.
pub fn main_with_args<I, T>(args: I, stdout: &mut impl Write, stderr: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(stdout, "{text}")
            } else {
                write!(stderr, "{text}")
            };
            return code;
        }
    };
    match run(&cli) {
        Ok(report) => {
            let _ = write!(stdout, "{}", report.render(cli.common.out.is_none()));
            report.exit_code()
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}
