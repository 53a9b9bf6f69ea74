//! JSON job documents.
//!
//! ```json
//! {
//!   "fuzzy": {"type": "trapezoidal", "points": [0, 0.8, 1.2, 2]},
//!   "n": 10,
//!   "grid": 4097,
//!   "outputs": {"csv": "curve.csv", "report": "report.json"}
//! }
//! ```
//!
//! Exactly one of `fuzzy` and `function` is given. Functions are
//! `poly` (`coeffs`, lowest degree first), `sqrt`, `pwl` (`knots`) or a named
//! `corpus` member, and need an `interval` unless they are `pwl`.

use std::fmt;
use std::str::FromStr;

use baskafuzz_core::corpus;
use baskafuzz_core::fuzzy::FuzzyNumber;
use baskafuzz_core::pwl::PiecewiseLinear;
use baskafuzz_core::shape::DEFAULT_VERIFICATION_GRID;
use baskafuzz_core::{Error as CoreError, QuadratureConfig, SampledFunction};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Approximate,
    Metrics,
    Verify,
    Converge,
    Sample,
}

impl Command {
    pub const ALL: [Command; 5] =
        [Command::Approximate, Command::Metrics, Command::Verify, Command::Converge, Command::Sample];

    pub fn as_str(self) -> &'static str {
        match self {
            Command::Approximate => "approximate",
            Command::Metrics => "metrics",
            Command::Verify => "verify",
            Command::Converge => "converge",
            Command::Sample => "sample",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Command::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown command {s:?}"))
    }
}

/// Malformed document: bad JSON, a missing or unknown field, a wrong type.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{message} (line {line}, column {column})")]
pub struct SchemaError {
    pub message: String,
    pub line: usize,
    pub column: usize,
}

impl SchemaError {
    fn at_start(message: impl Into<String>) -> Self {
        Self { message: message.into(), line: 1, column: 1 }
    }
}

impl From<serde_json::Error> for SchemaError {
    fn from(e: serde_json::Error) -> Self {
        let message = e.to_string();
        // serde_json appends " at line L column C"; keep only the message
        let message = match message.rfind(" at line ") {
            Some(i) => message[..i].to_string(),
            None => message,
        };
        Self { message, line: e.line(), column: e.column() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum FuzzyDoc {
    Triangular { points: [f64; 3] },
    Trapezoidal { points: [f64; 4] },
    PiecewiseLinear { knots: Vec<(f64, f64)> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum FunctionDoc {
    Poly { coeffs: Vec<f64> },
    Sqrt {},
    Pwl { knots: Vec<(f64, f64)> },
    Corpus { name: String },
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputsDoc {
    pub csv: Option<String>,
    pub report: Option<String>,
}

/// The document as written.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fuzzy: Option<FuzzyDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub function: Option<FunctionDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interval: Option<(f64, f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_list: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quadrature: Option<QuadratureConfig>,
    /// Exponents `r` of the reduction functions `s(α) = α^r`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduction: Option<Vec<u32>>,
    /// Peak of a unimodal function, for the shape checks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub peak: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outputs: Option<OutputsDoc>,
}

pub fn parse_document(text: &str) -> Result<JobDoc, SchemaError> {
    let doc: JobDoc = serde_json::from_str(text)?;
    match (&doc.fuzzy, &doc.function) {
        (Some(_), Some(_)) => Err(SchemaError::at_start("give either `fuzzy` or `function`, not both")),
        (None, None) => Err(SchemaError::at_start("missing field `fuzzy` or `function`")),
        _ => Ok(doc),
    }
}

/// What the job operates on.
#[derive(Debug, Clone)]
pub enum Subject {
    Fuzzy(FuzzyNumber),
    Function { function: SampledFunction, interval: (f64, f64) },
}

impl Subject {
    pub fn interval(&self) -> (f64, f64) {
        match self {
            Subject::Fuzzy(u) => u.support(),
            Subject::Function { interval, .. } => *interval,
        }
    }

    /// The membership of a fuzzy number, viewed as a function on its support.
    pub fn as_function(&self) -> SampledFunction {
        match self {
            Subject::Function { function, .. } => function.clone(),
            Subject::Fuzzy(u) => {
                let (m, w) = (u.clone(), u.clone());
                let f = SampledFunction::new("membership", move |x| m.membership(x));
                if u.modulus(1.0).is_some() {
                    f.with_modulus(move |d| w.modulus(d).unwrap_or(f64::NAN))
                } else {
                    f
                }
            }
        }
    }
}

/// Validated job.
#[derive(Debug, Clone)]
pub struct JobSpec {
    pub command: Command,
    pub doc: JobDoc,
    pub subject: Subject,
    pub degrees: Vec<usize>,
    pub grid: usize,
    pub quadrature: QuadratureConfig,
    pub reductions: Vec<u32>,
    /// Known peak of a unimodal function subject.
    pub peak: Option<f64>,
    pub csv_name: String,
    pub report_name: String,
}

#[derive(Debug, thiserror::Error)]
pub enum SpecError {
    #[error("schema error: {0}")]
    Schema(#[from] SchemaError),
    #[error("invalid job: {0}")]
    Validation(#[from] CoreError),
    #[error("invalid job: {0}")]
    Unsupported(String),
}

/// Parse and validate a job document for `command`.
pub fn parse_spec(command: Command, text: &str) -> Result<JobSpec, SpecError> {
    let doc = parse_document(text)?;
    let subject = match (&doc.fuzzy, &doc.function) {
        (Some(f), _) => Subject::Fuzzy(build_fuzzy(f)?),
        (_, Some(f)) => build_function(f, doc.interval)?,
        _ => unreachable!("checked by parse_document"),
    };
    let mut degrees = Vec::new();
    if let Some(n) = doc.n {
        degrees.push(n);
    }
    if let Some(list) = &doc.n_list {
        degrees.extend(list);
    }
    if let Some(&n) = degrees.iter().find(|&&n| n < 2) {
        return Err(CoreError::InvalidContext(format!("degree must be >= 2, got {n}")).into());
    }
    degrees.sort_unstable();
    degrees.dedup();
    if degrees.is_empty() && command != Command::Metrics {
        return Err(SchemaError::at_start("missing field `n` or `n_list`").into());
    }
    let grid = doc.grid.unwrap_or(DEFAULT_VERIFICATION_GRID);
    if grid < 3 {
        return Err(CoreError::InvalidGrid(format!("grid must have >= 3 points, got {grid}")).into());
    }
    let quadrature = doc.quadrature.unwrap_or_default();
    quadrature.validate()?;
    let reductions = doc.reduction.clone().unwrap_or_else(|| vec![1]);
    let peak = match (doc.peak, &doc.function) {
        (Some(p), _) => Some(p),
        (None, Some(FunctionDoc::Corpus { name })) => {
            let (a, b) = subject.interval();
            corpus::function(name, a, b)?.peak()
        }
        _ => None,
    };
    let outputs = doc.outputs.clone().unwrap_or_default();
    let csv_name = outputs.csv.unwrap_or_else(|| format!("{command}.csv"));
    let report_name = outputs.report.unwrap_or_else(|| format!("{command}.json"));
    Ok(JobSpec { command, doc, subject, degrees, grid, quadrature, reductions, peak, csv_name, report_name })
}

fn build_fuzzy(doc: &FuzzyDoc) -> Result<FuzzyNumber, CoreError> {
    match doc {
        FuzzyDoc::Triangular { points: [a, m, b] } => FuzzyNumber::triangular(*a, *m, *b),
        FuzzyDoc::Trapezoidal { points: [a, c, d, b] } => FuzzyNumber::trapezoidal(*a, *c, *d, *b),
        FuzzyDoc::PiecewiseLinear { knots } => FuzzyNumber::piecewise_linear(knots),
    }
}

fn require_interval(interval: Option<(f64, f64)>) -> Result<(f64, f64), SpecError> {
    let (a, b) = interval.ok_or_else(|| SchemaError::at_start("missing field `interval`"))?;
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(CoreError::InvalidContext(format!("need finite a < b, got [{a}, {b}]")).into());
    }
    Ok((a, b))
}

fn build_function(doc: &FunctionDoc, interval: Option<(f64, f64)>) -> Result<Subject, SpecError> {
    let (function, interval) = match doc {
        FunctionDoc::Poly { coeffs } => {
            let (a, b) = require_interval(interval)?;
            (polynomial(coeffs.clone(), a, b), (a, b))
        }
        FunctionDoc::Sqrt {} => {
            let (a, b) = require_interval(interval)?;
            if a < 0.0 {
                return Err(CoreError::Domain { x: a, lo: 0.0, hi: f64::INFINITY }.into());
            }
            let f = SampledFunction::new("sqrt", |x: f64| x.sqrt()).with_modulus(move |d: f64| {
                // concave and increasing: the largest rise is at the left end
                b.min(a + d.max(0.0)).sqrt() - a.sqrt()
            });
            (f, (a, b))
        }
        FunctionDoc::Pwl { knots } => {
            let p = PiecewiseLinear::new(knots)?;
            let (a, b) = match interval {
                Some(_) => require_interval(interval)?,
                None => p.domain(),
            };
            let (q, w) = (p.clone(), p);
            let f = SampledFunction::new("pwl", move |x| q.eval(x)).with_modulus(move |d| w.modulus(d));
            (f, (a, b))
        }
        FunctionDoc::Corpus { name } => {
            let (a, b) = require_interval(interval)?;
            (corpus::function(name, a, b)?.function, (a, b))
        }
    };
    Ok(Subject::Function { function, interval })
}

/// `Σ c_i x^i`, with a closed-form modulus on `[a, b]` up to degree 2.
fn polynomial(coeffs: Vec<f64>, a: f64, b: f64) -> SampledFunction {
    let degree = coeffs.iter().rposition(|&c| c != 0.0).unwrap_or(0);
    let c = coeffs.clone();
    let f = SampledFunction::new("poly", move |x: f64| c.iter().rev().fold(0.0, |acc, &ci| acc * x + ci));
    let c1 = coeffs.get(1).copied().unwrap_or(0.0);
    let c2 = coeffs.get(2).copied().unwrap_or(0.0);
    match degree {
        0 => f.with_modulus(|_| 0.0),
        1 => f.with_modulus(move |d: f64| c1.abs() * d.clamp(0.0, b - a)),
        2 => f.with_modulus(move |d: f64| {
            // f(x+d) - f(x) = d (c1 + c2 (2x + d)) is linear in x
            let d = d.clamp(0.0, b - a);
            d * (c1 + c2 * (2.0 * a + d)).abs().max((c1 + c2 * (2.0 * b - d)).abs())
        }),
        _ => f,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trapezoid_document() {
        let job = parse_spec(
            Command::Approximate,
            r#"{"fuzzy":{"type":"trapezoidal","points":[0,0.8,1.2,2]}, "n": 10}"#,
        )
        .unwrap();
        match &job.subject {
            Subject::Fuzzy(u) => {
                assert_eq!(u.support(), (0.0, 2.0));
                assert_eq!(u.core(), (0.8, 1.2));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(job.grid, 4097);
        assert_eq!(job.quadrature, QuadratureConfig::CompositeSimpson { panels: 1024 });
        assert_eq!(job.degrees, vec![10]);
    }

    #[test]
    fn identity_function_document() {
        let job = parse_spec(
            Command::Verify,
            r#"{"function":{"type":"poly","coeffs":[0,1]},"interval":[0,1],"n":4}"#,
        )
        .unwrap();
        let f = job.subject.as_function();
        assert_eq!(f.eval(0.37), 0.37);
        assert_eq!(f.closed_form_modulus(0.25), Some(0.25));
    }

    #[test]
    fn missing_points_names_the_field() {
        let err = parse_document(r#"{"fuzzy":{"type":"trapezoidal"}}"#).unwrap_err();
        assert!(err.message.contains("points"), "{err}");
        assert_eq!(err.line, 1);
    }

    #[test]
    fn schema_errors_carry_positions() {
        let err = parse_document("{\n  \"fuzzy\": {\"type\": \"triangular\", \"points\": [0, 1, 2]},\n  \"bogus\": 1\n}")
            .unwrap_err();
        assert!(err.message.contains("bogus"), "{err}");
        assert_eq!(err.line, 3);
        assert!(parse_document("{").is_err());
        assert!(parse_document("{}").is_err());
        assert!(parse_document(r#"{"fuzzy":{"type":"blob","points":[1]}}"#).is_err());
        let both = r#"{"fuzzy":{"type":"triangular","points":[0,1,2]},"function":{"type":"sqrt"}}"#;
        assert!(parse_document(both).is_err());
    }

    #[test]
    fn validation_errors_are_separate() {
        let bad = r#"{"fuzzy":{"type":"triangular","points":[2,1,0]},"n":4}"#;
        assert!(matches!(parse_spec(Command::Verify, bad), Err(SpecError::Validation(_))));
        let small = r#"{"fuzzy":{"type":"triangular","points":[0,1,2]},"n":1}"#;
        assert!(matches!(parse_spec(Command::Verify, small), Err(SpecError::Validation(_))));
        let grid = r#"{"fuzzy":{"type":"triangular","points":[0,1,2]},"n":4,"grid":2}"#;
        assert!(matches!(parse_spec(Command::Verify, grid), Err(SpecError::Validation(_))));
        let no_n = r#"{"fuzzy":{"type":"triangular","points":[0,1,2]}}"#;
        assert!(matches!(parse_spec(Command::Verify, no_n), Err(SpecError::Schema(_))));
        assert!(parse_spec(Command::Metrics, no_n).is_ok());
    }

    #[test]
    fn polynomial_moduli() {
        let f = polynomial(vec![0.0, 0.0, 1.0], 0.0, 1.0);
        for d in [0.1, 0.5, 0.9] {
            assert!((f.closed_form_modulus(d).unwrap() - (2.0 * d - d * d)).abs() < 1e-15);
        }
        let g = polynomial(vec![1.0, -3.0, 1.0], -1.0, 2.0);
        // brute force on a fine grid
        let xs: Vec<f64> = (0..=3000).map(|i| -1.0 + i as f64 * 1e-3).collect();
        let d = 0.4;
        let mut best: f64 = 0.0;
        for &x in &xs {
            if x + d <= 2.0 + 1e-12 {
                best = best.max((g.eval(x + d) - g.eval(x)).abs());
            }
        }
        assert!((g.closed_form_modulus(d).unwrap() - best).abs() < 1e-9);
        assert!(polynomial(vec![0.0, 0.0, 0.0, 1.0], 0.0, 1.0).closed_form_modulus(0.1).is_none());
    }

    #[test]
    fn sqrt_modulus() {
        let job = parse_spec(Command::Converge, r#"{"function":{"type":"sqrt"},"interval":[0,4],"n_list":[2,4]}"#)
            .unwrap();
        let f = job.subject.as_function();
        assert_eq!(f.closed_form_modulus(1.0), Some(1.0));
        assert_eq!(f.closed_form_modulus(9.0), Some(2.0));
        let neg = r#"{"function":{"type":"sqrt"},"interval":[-1,4],"n":3}"#;
        assert!(matches!(parse_spec(Command::Verify, neg), Err(SpecError::Validation(_))));
    }
}
