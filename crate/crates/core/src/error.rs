use std::fmt;

use thiserror::Error;

/// A single broken fuzzy-number invariant found during validation.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// Support endpoints are not finite or are out of order.
    UnboundedSupport { lo: f64, hi: f64 },
    /// The declared core is not contained in the support, or `c > d`.
    CoreOutsideSupport { core: (f64, f64), support: (f64, f64) },
    /// The membership never reaches 1 (largest sampled value given).
    NotNormal { sup: f64 },
    /// The membership is not 1 somewhere inside the declared core.
    CoreNotUnit { x: f64, value: f64 },
    /// The left side decreases or the right side increases at `x`.
    NotQuasiConcave { x: f64, drop: f64 },
    /// A membership value outside `[0, 1]`.
    OutOfRange { x: f64, value: f64 },
    /// The membership vanishes strictly inside the support.
    VanishesInsideSupport { x: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnboundedSupport { lo, hi } => {
                write!(f, "UnboundedSupport: support [{lo}, {hi}] is not a compact interval")
            }
            Violation::CoreOutsideSupport { core, support } => write!(
                f,
                "CoreOutsideSupport: core [{}, {}] not inside support [{}, {}]",
                core.0, core.1, support.0, support.1
            ),
            Violation::NotNormal { sup } => write!(f, "NotNormal: sup of membership is {sup}"),
            Violation::CoreNotUnit { x, value } => {
                write!(f, "NotNormal: membership at core point {x} is {value}")
            }
            Violation::NotQuasiConcave { x, drop } => {
                write!(f, "NotQuasiConcave: monotonicity broken at {x} by {drop}")
            }
            Violation::OutOfRange { x, value } => {
                write!(f, "membership {value} at {x} is outside [0, 1]")
            }
            Violation::VanishesInsideSupport { x } => {
                write!(f, "membership vanishes at interior point {x}")
            }
        }
    }
}

fn join(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid fuzzy number: {}", join(.0))]
    InvalidFuzzyNumber(Vec<Violation>),

    #[error("x = {x} lies outside [{lo}, {hi}]")]
    Domain { x: f64, lo: f64, hi: f64 },

    #[error("invalid operator context: {0}")]
    InvalidContext(String),

    #[error("function is negative at knot {x} (value {value})")]
    NegativeFunction { x: f64, value: f64 },

    #[error("invalid reduction function: {0}")]
    InvalidReduction(String),

    #[error("invalid quadrature configuration: {0}")]
    InvalidQuadrature(String),

    #[error("adaptive quadrature exceeded its budget of {budget} evaluations")]
    QuadratureFailure { budget: usize },

    #[error("no closed-form modulus of continuity available for {0}")]
    ModulusUnavailable(String),

    #[error("function is not concave on the verification grid (violation {0})")]
    NotConcave(f64),

    #[error("function is not unimodal with peak {peak} (violation {violation})")]
    NotUnimodal { peak: f64, violation: f64 },

    #[error("degenerate core [{c}, {c}]: a non-empty core interval is required")]
    DegenerateCore { c: f64 },

    #[error("degree n = {n} too small: need (b-a)/n < d-c, i.e. n > {threshold}")]
    DegreeTooSmall { n: usize, threshold: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}

impl Error {
    pub fn violations(&self) -> &[Violation] {
        match self {
            Error::InvalidFuzzyNumber(v) => v,
            _ => &[],
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
