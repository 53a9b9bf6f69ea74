//! Max-product approximation of fuzzy numbers: the membership function is
//! replaced by `U_n(μ)` on the support and by zero outside it.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fuzzy::{validate, FuzzyNumber, Membership, MembershipSpec, ShapeTag, ValidationConfig};
use crate::kernel::{leftmost_argmax, ApproximantCurve, KnotSamples, OperatorContext};
use crate::shape::{is_shape, BoundCheck, BOUND_SLACK_TOLERANCE, DEFAULT_VERIFICATION_GRID};
use crate::uniform_grid;

const CORE_TOLERANCE: f64 = 1e-9;
const SUPPORT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreKnotIndices {
    pub k_c: usize,
    pub k_d: usize,
}

/// `k_c`, `k_d` with `c_n = a + (b-a)k_c/n` and `d_n = a + (b-a)(k_d+1)/n`
/// (capped at `b`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoreKnots {
    pub indices: CoreKnotIndices,
    pub c_n: f64,
    pub d_n: f64,
}

fn check_admissible(u: &FuzzyNumber, n: usize) -> Result<()> {
    let (a, b) = u.support();
    let (c, d) = u.core();
    if c == d {
        return Err(Error::DegenerateCore { c });
    }
    if n < 2 || (b - a) / n as f64 >= d - c {
        return Err(Error::DegreeTooSmall { n, threshold: (b - a) / (d - c) });
    }
    Ok(())
}

/// Smallest knot index at or right of `c` and largest at or left of `d`.
pub fn compute_core_knots(u: &FuzzyNumber, n: usize) -> Result<CoreKnots> {
    check_admissible(u, n)?;
    let (a, b) = u.support();
    let (c, d) = u.core();
    let ctx = OperatorContext::new(n, a, b)?;
    let knot = |k: usize| ctx.knot(k);
    let scale = n as f64 / (b - a);

    let mut k_c = ((c - a) * scale).ceil().clamp(0.0, n as f64) as usize;
    while k_c > 0 && knot(k_c - 1) >= c {
        k_c -= 1;
    }
    while k_c < n && knot(k_c) < c {
        k_c += 1;
    }
    let mut k_d = ((d - a) * scale).floor().clamp(0.0, n as f64) as usize;
    while k_d < n && knot(k_d + 1) <= d {
        k_d += 1;
    }
    while k_d > 0 && knot(k_d) > d {
        k_d -= 1;
    }
    let d_n = if k_d >= n { b } else { knot(k_d + 1) };
    Ok(CoreKnots { indices: CoreKnotIndices { k_c, k_d }, c_n: knot(k_c), d_n })
}

/// `Ũ_n(u)`: the max-product operator applied to the membership of `u` on its
/// support, extended by zero.
#[derive(Debug, Clone)]
pub struct FuzzyApproximant {
    source: FuzzyNumber,
    samples: KnotSamples,
    core_knots: CoreKnots,
    exact_core: (f64, f64),
    is_fuzzy: bool,
}

pub fn approximate(u: &FuzzyNumber, n: usize) -> Result<FuzzyApproximant> {
    let core_knots = compute_core_knots(u, n)?;
    let (a, b) = u.support();
    let ctx = OperatorContext::new(n, a, b)?;
    let values = ctx.knots().iter().map(|&x| u.membership(x)).collect();
    let samples = KnotSamples::from_values(ctx, values)?;
    let exact_core = plateau(&samples);
    let mut approx = FuzzyApproximant { source: u.clone(), samples, core_knots, exact_core, is_fuzzy: false };
    approx.is_fuzzy = approx.revalidate();
    Ok(approx)
}

/// `[e_p, e_q]` where `p..=q` are the knots with membership 1: the curve is 1
/// exactly where the governing subinterval index is such a knot.
fn plateau(samples: &KnotSamples) -> (f64, f64) {
    let ctx = samples.context();
    let n = ctx.degree();
    let top = samples.values().iter().map(|&v| v >= 1.0 - CORE_TOLERANCE);
    let ones: Vec<usize> = top.enumerate().filter(|(_, t)| *t).map(|(k, _)| k).collect();
    let edges = ctx.subinterval_edges();
    let first = ones.first().copied().unwrap_or_else(|| leftmost_argmax(samples.values()));
    let last = ones.last().copied().unwrap_or(first);
    (edges[first.min(n - 1)], edges[(last + 1).min(n - 1)])
}

impl FuzzyApproximant {
    pub fn source(&self) -> &FuzzyNumber {
        &self.source
    }

    pub fn degree(&self) -> usize {
        self.samples.context().degree()
    }

    pub fn context(&self) -> &OperatorContext {
        self.samples.context()
    }

    pub fn core_knots(&self) -> CoreKnots {
        self.core_knots
    }

    /// Set where the curve equals 1.
    pub fn exact_core(&self) -> (f64, f64) {
        self.exact_core
    }

    pub fn is_fuzzy(&self) -> bool {
        self.is_fuzzy
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.samples.max_product(x).unwrap_or(0.0)
    }

    /// Linear truncated operator on the same knots, for comparison only.
    pub fn linear_eval(&self, x: f64) -> f64 {
        self.samples.linear(x).unwrap_or(0.0)
    }

    /// Curve values on `grid`; points outside the support give 0.
    pub fn curve(&self, grid: &[f64]) -> Result<ApproximantCurve> {
        if grid.is_empty() {
            return Err(Error::InvalidGrid("empty evaluation grid".into()));
        }
        let values: Vec<f64> = grid.iter().map(|&x| self.eval(x)).collect();
        let peak_index = leftmost_argmax(&values);
        Ok(ApproximantCurve {
            degree: self.degree(),
            interval: self.source.support(),
            grid: grid.to_vec(),
            peak: grid[peak_index],
            peak_index,
            values,
            core_knots: Some((self.core_knots.c_n, self.core_knots.d_n)),
        })
    }

    /// The curve as a fuzzy number with core [`Self::exact_core`].
    pub fn to_fuzzy_number(&self) -> Result<FuzzyNumber> {
        let samples = self.samples.clone();
        let f = move |x: f64| samples.max_product(x).unwrap_or(0.0);
        validate(
            MembershipSpec {
                support: self.source.support(),
                core: self.exact_core,
                shape: ShapeTag::Analytic,
                membership: Membership::Analytic(Arc::new(f)),
            },
            &ValidationConfig { grid_points: DEFAULT_VERIFICATION_GRID, ..ValidationConfig::default() },
        )
    }

    fn revalidate(&self) -> bool {
        if self.to_fuzzy_number().is_err() {
            return false;
        }
        let (a, b) = self.source.support();
        let xs = uniform_grid(a, b, DEFAULT_VERIFICATION_GRID);
        let ys: Vec<f64> = xs.iter().map(|&x| self.eval(x)).collect();
        is_shape(&xs, &ys).map(|s| s.is_quasi_concave).unwrap_or(false)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupportReport {
    pub pass: bool,
    pub points_checked: usize,
    pub first_violation: Option<f64>,
}

/// Curve positive strictly inside the support and zero outside it.
pub fn verify_support(approx: &FuzzyApproximant, grid: &[f64]) -> SupportReport {
    let (a, b) = approx.source.support();
    let slack = SUPPORT_TOLERANCE * (b - a);
    let first_violation = grid.iter().copied().find(|&x| {
        let v = approx.eval(x);
        if x > a + slack && x < b - slack {
            !(v > 0.0)
        } else if x < a || x > b {
            v != 0.0
        } else {
            false
        }
    });
    SupportReport { pass: first_violation.is_none(), points_checked: grid.len(), first_violation }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoreReport {
    pub core: (f64, f64),
    pub core_knots: (f64, f64),
    /// `|c - c_n|`, `|d - d_n|` against `(b-a)/n`.
    pub knot_displacement: (f64, f64),
    pub knot_bound: f64,
    pub knot_pass: bool,
    /// Where the curve is 1, and its distance from `[c, d]` against `2(b-a)/n`.
    pub exact_core: (f64, f64),
    pub exact_displacement: (f64, f64),
    pub exact_bound: f64,
    pub exact_pass: bool,
    /// Curve is 1 on `exact_core` and below 1 off it, on the grid.
    pub plateau_pass: bool,
    /// Curve is 1 on the grid points of `[c_n, d_n]`; reported only.
    pub knot_plateau_holds: bool,
    pub max_value: f64,
    pub normality_pass: bool,
}

impl CoreReport {
    pub fn passed(&self) -> bool {
        self.knot_pass && self.exact_pass && self.plateau_pass && self.normality_pass
    }
}

pub fn verify_core(approx: &FuzzyApproximant) -> CoreReport {
    verify_core_with_grid(approx, DEFAULT_VERIFICATION_GRID)
}

pub fn verify_core_with_grid(approx: &FuzzyApproximant, grid_size: usize) -> CoreReport {
    let (a, b) = approx.source.support();
    let (c, d) = approx.source.core();
    let n = approx.degree() as f64;
    let CoreKnots { c_n, d_n, .. } = approx.core_knots;
    let (lo, hi) = approx.exact_core;

    let knot_displacement = ((c - c_n).abs(), (d - d_n).abs());
    let knot_bound = (b - a) / n;
    let exact_displacement = ((c - lo).abs(), (d - hi).abs());
    let exact_bound = 2.0 * (b - a) / n;
    let within = |(p, q): (f64, f64), bound: f64| p <= bound + SUPPORT_TOLERANCE && q <= bound + SUPPORT_TOLERANCE;

    let xs = uniform_grid(a, b, grid_size);
    let ys: Vec<f64> = xs.iter().map(|&x| approx.eval(x)).collect();
    let eps = SUPPORT_TOLERANCE * (b - a);
    let plateau_pass = xs.iter().zip(&ys).all(|(&x, &v)| {
        if x >= lo && x <= hi {
            v >= 1.0 - CORE_TOLERANCE
        } else if x < lo - eps || x > hi + eps {
            v < 1.0 - CORE_TOLERANCE
        } else {
            true
        }
    }) && approx.eval(lo) >= 1.0 - CORE_TOLERANCE
        && approx.eval(hi) >= 1.0 - CORE_TOLERANCE;
    let knot_plateau_holds = xs
        .iter()
        .zip(&ys)
        .filter(|(&x, _)| x >= c_n && x <= d_n)
        .all(|(_, &v)| v >= 1.0 - CORE_TOLERANCE);
    let max_value = ys.iter().copied().fold(0.0, f64::max);

    CoreReport {
        core: (c, d),
        core_knots: (c_n, d_n),
        knot_displacement,
        knot_bound,
        knot_pass: within(knot_displacement, knot_bound),
        exact_core: (lo, hi),
        exact_displacement,
        exact_bound,
        exact_pass: within(exact_displacement, exact_bound),
        plateau_pass,
        knot_plateau_holds,
        max_value,
        normality_pass: (1.0 - CORE_TOLERANCE..=1.0 + CORE_TOLERANCE).contains(&max_value),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UniformErrorReport {
    /// Against `24([b-a]+1) ω₁(u; 1/√(n+1))`.
    pub check: BoundCheck,
    /// `6([b-a]+1) ω₁(u; 1/√n)`, reported only.
    pub stated_bound: f64,
    pub stated_holds: bool,
}

pub fn verify_uniform_error(approx: &FuzzyApproximant, grid: &[f64]) -> Result<UniformErrorReport> {
    let u = &approx.source;
    let (a, b) = u.support();
    let n = approx.degree() as f64;
    let omega = |delta: f64| {
        u.modulus(delta)
            .ok_or_else(|| Error::ModulusUnavailable("membership has no closed-form modulus".into()))
    };
    let scale = (b - a).floor() + 1.0;
    let bound = 24.0 * scale * omega(1.0 / (n + 1.0).sqrt())?;
    let stated_bound = 6.0 * scale * omega(1.0 / n.sqrt())?;
    let err = grid
        .iter()
        .map(|&x| (approx.eval(x) - u.membership(x)).abs())
        .fold(0.0, f64::max);
    Ok(UniformErrorReport {
        check: BoundCheck::new(err, bound),
        stated_bound,
        stated_holds: err <= stated_bound + BOUND_SLACK_TOLERANCE,
    })
}
