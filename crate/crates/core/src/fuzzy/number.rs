use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Violation};
use crate::pwl::PiecewiseLinear;

pub const DEFAULT_VALIDATION_GRID: usize = 2049;
pub const MEMBERSHIP_TOLERANCE: f64 = 1e-9;

pub type MembershipFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShapeTag {
    Triangular,
    Trapezoidal,
    PiecewiseLinear,
    Analytic,
}

/// How the membership function is evaluated inside the support.
#[derive(Clone)]
pub enum Membership {
    /// Four-point form `(t1, t2, t3, t4)` with linear sides.
    Trapezoidal([f64; 4]),
    PiecewiseLinear(PiecewiseLinear),
    Analytic(MembershipFn),
}

impl fmt::Debug for Membership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Membership::Trapezoidal(t) => f.debug_tuple("Trapezoidal").field(t).finish(),
            Membership::PiecewiseLinear(p) => f.debug_tuple("PiecewiseLinear").field(p).finish(),
            Membership::Analytic(_) => f.write_str("Analytic(..)"),
        }
    }
}

/// Unvalidated description of a fuzzy number.
#[derive(Debug, Clone)]
pub struct MembershipSpec {
    pub support: (f64, f64),
    pub core: (f64, f64),
    pub shape: ShapeTag,
    pub membership: Membership,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationConfig {
    pub grid_points: usize,
    pub tolerance: f64,
}

impl Default for ValidationConfig {
    fn default() -> Self {
        Self { grid_points: DEFAULT_VALIDATION_GRID, tolerance: MEMBERSHIP_TOLERANCE }
    }
}

/// A validated fuzzy number with support `[a, b]` and core `[c, d]`.
///
/// The membership is exactly zero outside the support. Instances are
/// immutable once built.
#[derive(Debug, Clone)]
pub struct FuzzyNumber {
    support: (f64, f64),
    core: (f64, f64),
    shape: ShapeTag,
    membership: Membership,
}

impl FuzzyNumber {
    pub fn triangular(a: f64, m: f64, b: f64) -> Result<Self> {
        validate(
            MembershipSpec {
                support: (a, b),
                core: (m, m),
                shape: ShapeTag::Triangular,
                membership: Membership::Trapezoidal([a, m, m, b]),
            },
            &ValidationConfig::default(),
        )
    }

    pub fn trapezoidal(t1: f64, t2: f64, t3: f64, t4: f64) -> Result<Self> {
        validate(
            MembershipSpec {
                support: (t1, t4),
                core: (t2, t3),
                shape: ShapeTag::Trapezoidal,
                membership: Membership::Trapezoidal([t1, t2, t3, t4]),
            },
            &ValidationConfig::default(),
        )
    }

    /// Crisp interval `[p, q]`: membership is the indicator of the interval.
    pub fn crisp_interval(p: f64, q: f64) -> Result<Self> {
        Self::trapezoidal(p, p, q, q)
    }

    pub fn singleton(p: f64) -> Result<Self> {
        Self::trapezoidal(p, p, p, p)
    }

    /// Membership given as an ordered `(x, μ)` knot list. Support is the knot
    /// span and the core spans the knots with `μ = 1`.
    pub fn piecewise_linear(knots: &[(f64, f64)]) -> Result<Self> {
        let pwl = PiecewiseLinear::new(knots)?;
        let support = pwl.domain();
        let unit: Vec<f64> = pwl
            .knots()
            .filter(|&(_, m)| (m - 1.0).abs() <= MEMBERSHIP_TOLERANCE)
            .map(|(x, _)| x)
            .collect();
        let Some((&c, &d)) = unit.first().zip(unit.last()) else {
            return Err(Error::InvalidFuzzyNumber(vec![Violation::NotNormal {
                sup: pwl.max_value(),
            }]));
        };
        validate(
            MembershipSpec {
                support,
                core: (c, d),
                shape: ShapeTag::PiecewiseLinear,
                membership: Membership::PiecewiseLinear(pwl),
            },
            &ValidationConfig::default(),
        )
    }

    pub fn analytic<F>(support: (f64, f64), core: (f64, f64), f: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        validate(
            MembershipSpec {
                support,
                core,
                shape: ShapeTag::Analytic,
                membership: Membership::Analytic(Arc::new(f)),
            },
            &ValidationConfig::default(),
        )
    }

    pub fn support(&self) -> (f64, f64) {
        self.support
    }

    pub fn core(&self) -> (f64, f64) {
        self.core
    }

    pub fn shape(&self) -> ShapeTag {
        self.shape
    }

    pub fn membership_kind(&self) -> &Membership {
        &self.membership
    }

    /// `c = d`; accepted here but rejected by the approximation pipeline.
    pub fn has_degenerate_core(&self) -> bool {
        self.core.0 == self.core.1
    }

    pub fn membership(&self, x: f64) -> f64 {
        let (a, b) = self.support;
        if !(x >= a && x <= b) {
            return 0.0;
        }
        eval_inside(&self.membership, x)
    }

    /// Piecewise-linear form of triangular, trapezoidal and piecewise-linear
    /// shapes with a non-degenerate support.
    pub fn as_piecewise_linear(&self) -> Option<PiecewiseLinear> {
        match &self.membership {
            Membership::PiecewiseLinear(p) => Some(p.clone()),
            Membership::Trapezoidal([t1, t2, t3, t4]) => {
                let mut knots = Vec::with_capacity(4);
                if t1 < t2 {
                    knots.push((*t1, 0.0));
                }
                knots.push((*t2, 1.0));
                if t3 > t2 {
                    knots.push((*t3, 1.0));
                }
                if t4 > t3 {
                    knots.push((*t4, 0.0));
                }
                PiecewiseLinear::new(&knots).ok()
            }
            Membership::Analytic(_) => None,
        }
    }

    /// Closed-form modulus of continuity of the membership on its support.
    ///
    /// Only available for continuous piecewise-linear shapes (`μ(a) = μ(b) = 0`
    /// is not required since the modulus is taken on `[a, b]`).
    pub fn modulus(&self, delta: f64) -> Option<f64> {
        self.as_piecewise_linear().map(|p| p.modulus(delta))
    }

    /// Translate by `delta`; analytic memberships are wrapped.
    pub fn shifted(&self, delta: f64) -> Self {
        let membership = match &self.membership {
            Membership::Trapezoidal(t) => {
                Membership::Trapezoidal([t[0] + delta, t[1] + delta, t[2] + delta, t[3] + delta])
            }
            Membership::PiecewiseLinear(p) => Membership::PiecewiseLinear(p.shifted(delta)),
            Membership::Analytic(f) => {
                let f = Arc::clone(f);
                Membership::Analytic(Arc::new(move |x| f(x - delta)))
            }
        };
        Self {
            support: (self.support.0 + delta, self.support.1 + delta),
            core: (self.core.0 + delta, self.core.1 + delta),
            shape: self.shape,
            membership,
        }
    }

    /// Levels in `(0, 1)` where the α-cut branches may kink or jump.
    pub fn alpha_breakpoints(&self) -> Vec<f64> {
        match &self.membership {
            Membership::PiecewiseLinear(p) => {
                let mut v: Vec<f64> = p.ys().iter().copied().filter(|&m| m > 0.0 && m < 1.0).collect();
                v.sort_by(f64::total_cmp);
                v.dedup();
                v
            }
            _ => Vec::new(),
        }
    }
}

fn eval_inside(m: &Membership, x: f64) -> f64 {
    match m {
        Membership::Trapezoidal([t1, t2, t3, t4]) => {
            if x < *t2 {
                (x - t1) / (t2 - t1)
            } else if x <= *t3 {
                1.0
            } else {
                (t4 - x) / (t4 - t3)
            }
        }
        Membership::PiecewiseLinear(p) => p.eval(x),
        Membership::Analytic(f) => f(x),
    }
}

/// Check every fuzzy-number invariant on a uniform grid over the support.
///
/// All violations found are reported together, one per kind.
pub fn validate(spec: MembershipSpec, config: &ValidationConfig) -> Result<FuzzyNumber> {
    let (a, b) = spec.support;
    let (c, d) = spec.core;
    let tol = config.tolerance;
    if config.grid_points < 2 {
        return Err(Error::InvalidGrid("validation grid needs at least 2 points".into()));
    }
    if !a.is_finite() || !b.is_finite() || a > b {
        return Err(Error::InvalidFuzzyNumber(vec![Violation::UnboundedSupport { lo: a, hi: b }]));
    }
    if !c.is_finite() || !d.is_finite() || c > d || c < a || d > b {
        return Err(Error::InvalidFuzzyNumber(vec![Violation::CoreOutsideSupport {
            core: (c, d),
            support: (a, b),
        }]));
    }

    let mut grid: Vec<f64> = (0..config.grid_points)
        .map(|i| a + (b - a) * i as f64 / (config.grid_points - 1) as f64)
        .collect();
    *grid.last_mut().unwrap() = b;
    grid.extend([c, d]);
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    let mu: Vec<f64> = grid.iter().map(|&x| eval_inside(&spec.membership, x)).collect();

    let mut violations = Vec::new();
    let push_once = |v: Violation, violations: &mut Vec<Violation>| {
        if !violations
            .iter()
            .any(|w| std::mem::discriminant(w) == std::mem::discriminant(&v))
        {
            violations.push(v);
        }
    };

    if let Some((x, m)) = grid
        .iter()
        .zip(&mu)
        .find(|(_, m)| !m.is_finite() || **m < -tol || **m > 1.0 + tol)
    {
        push_once(Violation::OutOfRange { x: *x, value: *m }, &mut violations);
    }
    let sup = mu.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if sup < 1.0 - tol {
        push_once(Violation::NotNormal { sup }, &mut violations);
    }
    for (x, m) in grid.iter().zip(&mu) {
        if *x >= c && *x <= d && *m < 1.0 - tol {
            push_once(Violation::CoreNotUnit { x: *x, value: *m }, &mut violations);
            break;
        }
    }
    for i in 1..grid.len() {
        let (x0, x1) = (grid[i - 1], grid[i]);
        let step = mu[i] - mu[i - 1];
        if x1 <= c && step < -tol {
            push_once(Violation::NotQuasiConcave { x: x1, drop: -step }, &mut violations);
        }
        if x0 >= d && step > tol {
            push_once(Violation::NotQuasiConcave { x: x0, drop: step }, &mut violations);
        }
    }
    for (x, m) in grid.iter().zip(&mu) {
        if *x > a && *x < b && *m <= 0.0 {
            push_once(Violation::VanishesInsideSupport { x: *x }, &mut violations);
            break;
        }
    }

    if !violations.is_empty() {
        return Err(Error::InvalidFuzzyNumber(violations));
    }
    Ok(FuzzyNumber { support: (a, b), core: (c, d), shape: spec.shape, membership: spec.membership })
}
