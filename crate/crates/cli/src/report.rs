//! The JSON report written by every command, and CSV emission.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::spec::JobDoc;

pub const TOOL: &str = "baskafuzz";

/// One measured quantity set against a bound. Only asserted checks decide
/// the exit code; the rest are reported for comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    pub asserted: bool,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measured: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckEntry {
    /// `measured <= bound` style check.
    pub fn bound(name: &str, degree: Option<usize>, asserted: bool, pass: bool, measured: f64, bound: f64) -> Self {
        Self {
            name: name.to_string(),
            degree,
            asserted,
            pass,
            measured: finite(measured),
            bound: finite(bound),
            detail: None,
        }
    }

    /// Yes/no check.
    pub fn flag(name: &str, degree: Option<usize>, asserted: bool, pass: bool) -> Self {
        Self { name: name.to_string(), degree, asserted, pass, measured: None, bound: None, detail: None }
    }

    pub fn with_measured(mut self, measured: f64) -> Self {
        self.measured = finite(measured);
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

/// JSON has no NaN or infinity; such values are left out.
pub fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

/// Characteristics of one fuzzy number, keyed by reduction exponent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsEntry {
    pub of: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(rename = "EI")]
    pub ei: (f64, f64),
    #[serde(rename = "EV")]
    pub ev: f64,
    pub wid: f64,
    #[serde(rename = "Val_r")]
    pub val: BTreeMap<u32, f64>,
    #[serde(rename = "Amb_r")]
    pub amb: BTreeMap<u32, f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ErrorKind {
    Schema,
    Validation,
    Internal,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Schema => 1,
            ErrorKind::Validation => 2,
            ErrorKind::Internal => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportError {
    pub kind: ErrorKind,
    /// Name of the underlying error, e.g. `DegreeTooSmall`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub code: Option<String>,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// The job document as parsed, absent when it could not be parsed.
    pub job: Option<JobDoc>,
    pub checks: Vec<CheckEntry>,
    pub measurements: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub metrics: Vec<MetricsEntry>,
    /// Files written next to the report, relative to the output directory.
    pub artifacts: Vec<String>,
    pub error: Option<ReportError>,
    pub passed: bool,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            tool: TOOL.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            job: None,
            checks: Vec::new(),
            measurements: BTreeMap::new(),
            metrics: Vec::new(),
            artifacts: Vec::new(),
            error: None,
            passed: false,
        }
    }

    pub fn measure(&mut self, key: impl Into<String>, value: f64) {
        if let Some(v) = finite(value) {
            self.measurements.insert(key.into(), v);
        }
    }

    pub fn all_asserted_pass(&self) -> bool {
        self.checks.iter().filter(|c| c.asserted).all(|c| c.pass)
    }

    pub fn fail(&mut self, kind: ErrorKind, message: impl Into<String>) {
        self.error = Some(ReportError { kind, code: None, message: message.into() });
    }

    pub fn fail_with_code(&mut self, kind: ErrorKind, code: &str, message: impl Into<String>) {
        self.error = Some(ReportError { kind, code: Some(code.to_string()), message: message.into() });
    }

    /// Exit status: the error kind if any, else 3 when an asserted check
    /// failed, else 0.
    pub fn exit_code(&self) -> i32 {
        match &self.error {
            Some(e) => e.kind.exit_code(),
            None if self.all_asserted_pass() => 0,
            None => 3,
        }
    }

    pub fn finish(&mut self) {
        self.passed = self.error.is_none() && self.all_asserted_pass();
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

/// Shortest decimal that reads back to the same `f64`; exponent form for
/// very large and very small magnitudes.
pub fn format_float(x: f64) -> String {
    format!("{x:?}")
}

/// Comma-separated table with a header line and LF line endings.
#[derive(Debug, Clone, Default)]
pub struct Csv {
    text: String,
}

pub enum Cell<'a> {
    Float(f64),
    Opt(Option<f64>),
    Int(usize),
    Text(&'a str),
    Bool(bool),
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        let mut text = header.join(",");
        text.push('\n');
        Self { text }
    }

    pub fn row(&mut self, cells: &[Cell<'_>]) {
        for (i, cell) in cells.iter().enumerate() {
            if i > 0 {
                self.text.push(',');
            }
            match cell {
                Cell::Float(x) => self.text.push_str(&format_float(*x)),
                Cell::Opt(Some(x)) => self.text.push_str(&format_float(*x)),
                Cell::Opt(None) => {}
                Cell::Int(k) => write!(self.text, "{k}").expect("write to string"),
                Cell::Text(t) => self.text.push_str(t),
                Cell::Bool(b) => self.text.push_str(if *b { "true" } else { "false" }),
            }
        }
        self.text.push('\n');
    }

    pub fn into_string(self) -> String {
        self.text
    }
}
