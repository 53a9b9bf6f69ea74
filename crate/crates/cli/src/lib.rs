//! Job runner behind the `baskafuzz` binary.
//!
//! A job is a JSON document (see [`spec`]) run under one [`Command`]. Every run
//! writes a JSON [`Report`] into the output directory, plus a CSV for the
//! commands that produce one. The exit code is 1 for a malformed document, 2
//! for a well-formed but invalid job, 3 when an asserted check fails and 4 for
//! internal failures such as unwritable output.

pub mod commands;
pub mod report;
pub mod spec;

use std::fs;
use std::path::Path;

use baskafuzz_core::Error as CoreError;

pub use report::{CheckEntry, ErrorKind, Report};
pub use spec::{parse_document, parse_spec, Command, JobSpec, SchemaError, SpecError};

/// Caps the size of the worker pool.
pub const THREADS_VAR: &str = "BASKAFUZZ_THREADS";

#[derive(Debug)]
pub struct Outcome {
    pub report: Report,
    pub exit_code: i32,
}

fn error_kind(e: &SpecError) -> ErrorKind {
    match e {
        SpecError::Schema(_) => ErrorKind::Schema,
        SpecError::Validation(CoreError::QuadratureFailure { .. }) => ErrorKind::Internal,
        SpecError::Validation(_) | SpecError::Unsupported(_) => ErrorKind::Validation,
    }
}

fn error_code(e: &SpecError) -> &'static str {
    match e {
        SpecError::Schema(_) => "SchemaError",
        SpecError::Unsupported(_) => "Unsupported",
        SpecError::Validation(e) => match e {
            CoreError::InvalidFuzzyNumber(_) => "InvalidFuzzyNumber",
            CoreError::Domain { .. } => "Domain",
            CoreError::InvalidContext(_) => "InvalidContext",
            CoreError::NegativeFunction { .. } => "NegativeFunction",
            CoreError::InvalidReduction(_) => "InvalidReduction",
            CoreError::InvalidQuadrature(_) => "InvalidQuadrature",
            CoreError::QuadratureFailure { .. } => "QuadratureFailure",
            CoreError::ModulusUnavailable(_) => "ModulusUnavailable",
            CoreError::NotConcave(_) => "NotConcave",
            CoreError::NotUnimodal { .. } => "NotUnimodal",
            CoreError::DegenerateCore { .. } => "DegenerateCore",
            CoreError::DegreeTooSmall { .. } => "DegreeTooSmall",
            CoreError::InvalidGrid(_) => "InvalidGrid",
        },
    }
}

fn record(report: &mut Report, e: &SpecError) {
    report.fail_with_code(error_kind(e), error_code(e), e.to_string());
}

fn thread_pool() -> Result<rayon::ThreadPool, String> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(raw) = std::env::var(THREADS_VAR) {
        match raw.trim().parse::<usize>() {
            Ok(n) if n > 0 => builder = builder.num_threads(n),
            _ => return Err(format!("{THREADS_VAR} must be a positive integer, got {raw:?}")),
        }
    }
    builder.build().map_err(|e| e.to_string())
}

/// Run `command` on the job document `text`, writing artifacts into `out_dir`.
pub fn run_job(command: Command, text: &str, out_dir: &Path) -> Outcome {
    let mut report = Report::new(command.as_str());
    let mut report_name = format!("{command}.json");
    let mut artifact = None;

    match parse_spec(command, text) {
        Err(e) => {
            report.job = parse_document(text).ok();
            if let Some(outputs) = report.job.as_ref().and_then(|j| j.outputs.as_ref()) {
                report_name = outputs.report.clone().unwrap_or(report_name);
            }
            record(&mut report, &e);
        }
        Ok(job) => {
            report.job = Some(job.doc.clone());
            report_name = job.report_name.clone();
            match thread_pool() {
                Err(msg) => report.fail(ErrorKind::Validation, msg),
                Ok(pool) => match pool.install(|| commands::execute(&job, &mut report)) {
                    Ok(csv) => artifact = csv.map(|text| (job.csv_name.clone(), text)),
                    Err(e) => record(&mut report, &e),
                },
            }
        }
    }

    if let Err(e) = fs::create_dir_all(out_dir) {
        report.fail(ErrorKind::Internal, format!("cannot create {}: {e}", out_dir.display()));
    } else if let Some((name, text)) = artifact {
        match fs::write(out_dir.join(&name), text) {
            Ok(()) => report.artifacts.push(name),
            Err(e) => report.fail(ErrorKind::Internal, format!("cannot write {name}: {e}")),
        }
    }
    report.finish();
    if let Err(e) = fs::write(out_dir.join(&report_name), report.to_json()) {
        report.fail(ErrorKind::Internal, format!("cannot write {report_name}: {e}"));
        report.finish();
    }
    let exit_code = report.exit_code();
    Outcome { report, exit_code }
}

/// As [`run_job`], reading the document from `spec_path`.
pub fn run_file(command: Command, spec_path: &Path, out_dir: &Path) -> Outcome {
    match fs::read_to_string(spec_path) {
        Ok(text) => run_job(command, &text, out_dir),
        Err(e) => {
            let mut report = Report::new(command.as_str());
            report.fail(ErrorKind::Schema, format!("cannot read {}: {e}", spec_path.display()));
            report.finish();
            let exit_code = report.exit_code();
            Outcome { report, exit_code }
        }
    }
}
