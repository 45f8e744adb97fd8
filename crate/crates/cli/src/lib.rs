//! Front end for `sheffer-core`: configure an experiment, run it, and export
//! the results as CSV or JSON.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod report;

use std::io::Write;

pub use args::Cli;
pub use commands::execute;
pub use config::{ExperimentConfig, FamilySpec, Format, PairSpec};
pub use error::{CliError, CliResult, ExitStatus, Failure, FailureList};
pub use report::{Check, Report, Results};

use output::{csv_bytes, json_bytes, sidecar, write_atomic};
use report::*;

/// Primary CSV table of a report plus any secondary tables keyed by suffix.
pub fn csv_tables(report: &Report) -> CliResult<(Vec<u8>, Vec<(&'static str, Vec<u8>)>)> {
    match &report.results {
        Results::Generate(r) => Ok((csv_bytes(COEFF_HEADER, &r.rows)?, Vec::new())),
        Results::Zeros(r) => Ok((csv_bytes(ZERO_HEADER, &r.zeros)?, Vec::new())),
        Results::Density(r) => {
            let bins = csv_bytes(BIN_HEADER, &r.bins)?;
            if report.config.grid.is_some() {
                let extra = if r.distances.is_empty() { Vec::new() } else { vec![("bins.csv", bins)] };
                Ok((csv_bytes(DENSITY_HEADER, &r.curve)?, extra))
            } else {
                Ok((bins, Vec::new()))
            }
        }
        Results::Riordan(r) => match r.op {
            config::RiordanOp::Materialize => Ok((csv_bytes(COEFF_HEADER, &r.matrix)?, Vec::new())),
            config::RiordanOp::Check => Ok((csv_bytes(CHECK_HEADER, &report.checks)?, Vec::new())),
            _ => Ok((csv_bytes(SERIES_HEADER, &r.series)?, Vec::new())),
        },
    }
}

/// Writes the report to `config.out` (atomically) or to `stdout`. CSV runs
/// with an output path also get a `<stem>.report.json` holding the full
/// report with its checks.
pub fn emit(report: &Report, stdout: &mut dyn Write) -> CliResult<()> {
    let cfg = &report.config;
    let primary = match cfg.format {
        Format::Json => json_bytes(report)?,
        Format::Csv => {
            let (primary, extra) = csv_tables(report)?;
            if let Some(path) = &cfg.out {
                for (suffix, bytes) in extra {
                    write_atomic(&sidecar(path, suffix), &bytes)?;
                }
                write_atomic(&sidecar(path, "report.json"), &json_bytes(report)?)?;
            }
            primary
        }
    };
    match &cfg.out {
        Some(path) => write_atomic(path, &primary),
        None => stdout.write_all(&primary).map_err(|e| CliError::Output(e.to_string())),
    }
}

/// Exit status of a completed report: non-convergence first, then checks.
pub fn status(report: &Report) -> ExitStatus {
    if !report.converged() {
        ExitStatus::NonConvergence
    } else if report.failed_checks().next().is_some() {
        ExitStatus::CheckFailure
    } else {
        ExitStatus::Success
    }
}

/// Failure list for stderr, empty on success.
pub fn failures(report: &Report) -> FailureList {
    let failures = report
        .failed_checks()
        .map(|c| Failure { kind: if c.name == CERTIFIED { "non_convergence" } else { "check" }.into(), name: Some(c.name.clone()), reason: c.detail.clone() })
        .collect();
    FailureList { status: status(report).code(), failures }
}

/// Parses, runs and writes; returns the exit status and the stderr payload.
pub fn run(cli: Cli, stdout: &mut dyn Write) -> (ExitStatus, Option<FailureList>) {
    let outcome = cli.into_config().and_then(|cfg| {
        let report = execute(&cfg)?;
        emit(&report, stdout)?;
        Ok(report)
    });
    match outcome {
        Ok(report) => {
            let status = status(&report);
            let list = (status != ExitStatus::Success).then(|| failures(&report));
            (status, list)
        }
        Err(err) => {
            let status = err.status();
            (status, Some(FailureList { status: status.code(), failures: vec![err.failure()] }))
        }
    }
}
