//! The `superfock` command-line tool: configuration, dispatch and reports.

pub mod commands;
pub mod config;
pub mod report;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::Parser;
use superfock_core::Error;

use crate::config::{load_config, Cli, Format, RunConfig};
use crate::report::{csv_text, write_atomic, CsvRow, Report, SCHEMA_VERSION};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// A core error paired with the exit code it maps to.
pub type RunError = (i32, Error);

/// Run a validated config.
pub fn run(config: &RunConfig) -> Result<(Report, Option<Vec<CsvRow>>), RunError> {
    let start = Instant::now();
    let outcome = commands::dispatch(config).map_err(|e| {
        let code = match e {
            Error::Usage(_) | Error::DimensionMismatch(_) | Error::Resource(_) => EXIT_USAGE,
            Error::Precondition(_) | Error::Internal(_) => EXIT_CHECK_FAILED,
        };
        (code, e)
    })?;
    let timings = config
        .timings
        .then(|| BTreeMap::from([("total_ms".to_string(), start.elapsed().as_secs_f64() * 1e3)]));
    let report = Report {
        schema_version: SCHEMA_VERSION,
        command: config.command.name().to_string(),
        params: serde_json::to_value(config).expect("config serializes"),
        results: outcome.results,
        checks: outcome.checks,
        timings,
        seed: commands::SAMPLE_SEED,
    };
    Ok((report, outcome.csv_rows))
}

fn emit(path: Option<&std::path::Path>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => write_atomic(p, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

/// Full command-line entry point; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let _ = e.print();
            return code;
        }
    };
    let config = match load_config(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let (report, rows) = match run(&config) {
        Ok(r) => r,
        Err((code, e)) => {
            eprintln!("error: {e}");
            return code;
        }
    };
    let rows = rows.unwrap_or_default();
    let primary = match config.format {
        Format::Json => report.to_json(),
        Format::Csv => csv_text(&rows),
    };
    let written = emit(config.output.as_deref(), &primary).and_then(|_| match &config.csv {
        Some(path) => write_atomic(path, &csv_text(&rows)),
        None => Ok(()),
    });
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return EXIT_USAGE;
    }
    if report.checks.values().all(|c| c.passed()) {
        EXIT_PASS
    } else {
        for (name, c) in report.checks.iter().filter(|(_, c)| !c.passed()) {
            eprintln!(
                "check failed: {name} (value {:e}, tolerance {:e})",
                c.value, c.tolerance
            );
        }
        EXIT_CHECK_FAILED
    }
}
