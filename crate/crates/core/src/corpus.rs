//! Test functions with closed-form moduli of continuity, and a few fuzzy
//! numbers used by the verification suites.
//!
//! Each function is defined on the unit interval as `g(y)` and transported to
//! `[a, b]` by `f(x) = g((x-a)/(b-a))`, so `ω(f; δ) = ω(g; δ/(b-a))`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzy::FuzzyNumber;
use crate::kernel::SampledFunction;
use crate::pwl::PiecewiseLinear;

/// Shape facts about a corpus member, known analytically.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShapeTags {
    pub concave: bool,
    pub nondecreasing: bool,
    pub nonincreasing: bool,
    /// Peak in the unit coordinate, for unimodal members with a peak in the
    /// interior (the constant counts, with its peak at the left end).
    pub unimodal_peak: Option<f64>,
    pub lipschitz: bool,
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub function: SampledFunction,
    pub tags: ShapeTags,
    pub interval: (f64, f64),
}

impl CorpusEntry {
    /// Peak location on `[a, b]`.
    pub fn peak(&self) -> Option<f64> {
        let (a, b) = self.interval;
        self.tags.unimodal_peak.map(|p| a + (b - a) * p)
    }

    pub fn is_concave_nondecreasing(&self) -> bool {
        self.tags.concave && self.tags.nondecreasing
    }
}

pub const FUNCTION_NAMES: [&str; 11] = [
    "identity",
    "tent",
    "quadratic",
    "sqrt",
    "cap",
    "constant",
    "concave-rise",
    "falling-line",
    "skewed-tent",
    "sine-bump",
    "concave-fall",
];

fn tent() -> PiecewiseLinear {
    PiecewiseLinear::new(&[(0.0, 0.2), (0.5, 0.7), (1.0, 0.2)]).expect("valid knots")
}

fn skewed_tent() -> PiecewiseLinear {
    PiecewiseLinear::new(&[(0.0, 0.1), (0.7, 1.0), (1.0, 0.4)]).expect("valid knots")
}

type UnitFn = Box<dyn Fn(f64) -> f64 + Send + Sync>;

fn unit_definition(name: &str) -> Option<(UnitFn, UnitFn, ShapeTags)> {
    let tags = |concave, nondecreasing, nonincreasing, unimodal_peak, lipschitz| ShapeTags {
        concave,
        nondecreasing,
        nonincreasing,
        unimodal_peak,
        lipschitz,
    };
    let def: (UnitFn, UnitFn, ShapeTags) = match name {
        "identity" => (Box::new(|y| y), Box::new(|t| t), tags(true, true, false, None, true)),
        "tent" => {
            let (p, q) = (tent(), tent());
            (Box::new(move |y| p.eval(y)), Box::new(move |t| q.modulus(t)), tags(true, false, false, Some(0.5), true))
        }
        "quadratic" => (Box::new(|y| y * y), Box::new(|t| 2.0 * t - t * t), tags(false, true, false, None, true)),
        "sqrt" => (Box::new(|y: f64| y.sqrt()), Box::new(|t: f64| t.sqrt()), tags(true, true, false, None, false)),
        "cap" => (
            Box::new(|y| y * (1.0 - y) + 0.1),
            Box::new(|t| if t <= 0.5 { t * (1.0 - t) } else { 0.25 }),
            tags(true, false, false, Some(0.5), true),
        ),
        "constant" => (Box::new(|_| 1.3), Box::new(|_| 0.0), tags(true, true, true, Some(0.0), true)),
        "concave-rise" => (
            Box::new(|y| 2.0 * y - y * y),
            Box::new(|t| 2.0 * t - t * t),
            tags(true, true, false, None, true),
        ),
        "falling-line" => (Box::new(|y| 1.0 - y), Box::new(|t| t), tags(true, false, true, None, true)),
        "skewed-tent" => {
            let (p, q) = (skewed_tent(), skewed_tent());
            (Box::new(move |y| p.eval(y)), Box::new(move |t| q.modulus(t)), tags(true, false, false, Some(0.7), true))
        }
        "sine-bump" => (
            Box::new(|y: f64| (std::f64::consts::PI * y).sin() + 0.1),
            Box::new(|t: f64| if t <= 0.5 { (std::f64::consts::PI * t).sin() } else { 1.0 }),
            tags(true, false, false, Some(0.5), true),
        ),
        "concave-fall" => (
            Box::new(|y| 1.0 - y * y),
            Box::new(|t| 2.0 * t - t * t),
            tags(true, false, true, None, true),
        ),
        _ => return None,
    };
    Some(def)
}

/// Corpus member `name` transported to `[a, b]`.
pub fn function(name: &str, a: f64, b: f64) -> Result<CorpusEntry> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::InvalidContext(format!("need finite a < b, got [{a}, {b}]")));
    }
    let idx = FUNCTION_NAMES
        .iter()
        .position(|n| *n == name)
        .ok_or_else(|| Error::InvalidContext(format!("unknown corpus function {name:?}")))?;
    let name = FUNCTION_NAMES[idx];
    let (g, w, tags) = unit_definition(name).expect("listed name");
    let len = b - a;
    let function = SampledFunction::new(name, move |x| g(((x - a) / len).clamp(0.0, 1.0)))
        .with_modulus(move |d| if d <= 0.0 { 0.0 } else { w((d / len).min(1.0)) });
    Ok(CorpusEntry { name, function, tags, interval: (a, b) })
}

/// Every corpus function on `[a, b]`.
pub fn functions(a: f64, b: f64) -> Result<Vec<CorpusEntry>> {
    FUNCTION_NAMES.iter().map(|n| function(n, a, b)).collect()
}

/// Named fuzzy numbers with nondegenerate cores.
pub fn fuzzy_numbers() -> Vec<(&'static str, FuzzyNumber)> {
    vec![
        ("trapezoid-0-0.8-1.2-2", FuzzyNumber::trapezoidal(0.0, 0.8, 1.2, 2.0).expect("valid")),
        ("trapezoid-0-0.75-1.25-2", FuzzyNumber::trapezoidal(0.0, 0.75, 1.25, 2.0).expect("valid")),
        ("trapezoid-0-0.3-0.7-1", FuzzyNumber::trapezoidal(0.0, 0.3, 0.7, 1.0).expect("valid")),
        ("trapezoid-2-3-3.5-5", FuzzyNumber::trapezoidal(2.0, 3.0, 3.5, 5.0).expect("valid")),
        (
            "piecewise-linear",
            FuzzyNumber::piecewise_linear(&[(-1.0, 0.0), (-0.2, 0.6), (0.5, 1.0), (1.5, 1.0), (3.0, 0.0)])
                .expect("valid"),
        ),
    ]
}
