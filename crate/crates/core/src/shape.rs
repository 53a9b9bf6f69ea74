//! Moduli of continuity, grid shape detection, and numerical checks of the
//! error and shape-preservation estimates for the max-product operator.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{leftmost_argmax, KnotSamples, OperatorContext, SampledFunction};
use crate::uniform_grid;

/// Tolerance on adjacent differences for monotonicity / concavity tests.
pub const SHAPE_TOLERANCE: f64 = 1e-9;

/// A bound check passes when `bound - error >= -BOUND_SLACK_TOLERANCE`.
pub const BOUND_SLACK_TOLERANCE: f64 = 1e-9;

/// 2^12 + 1 points, so subinterval edges of small degrees land on the grid.
pub const DEFAULT_VERIFICATION_GRID: usize = 4097;

const UNIFORM_CONSTANT: f64 = 24.0;
const CONCAVE_CONSTANT: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModulusKind {
    ClosedForm,
    /// Sup over grid pairs; never larger than the true modulus.
    GridLowerBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModulusEstimate {
    pub delta: f64,
    pub value: f64,
    pub kind: ModulusKind,
}

/// `ω₁(f; δ)` on `interval`: the closed form when `f` carries one, otherwise
/// the largest `|f(x) - f(y)|` over grid pairs with `|x - y| <= δ`.
pub fn modulus(
    f: &SampledFunction,
    delta: f64,
    interval: (f64, f64),
    grid_size: usize,
) -> Result<ModulusEstimate> {
    if !(delta > 0.0) {
        return Err(Error::InvalidGrid(format!("modulus step must be positive, got {delta}")));
    }
    if let Some(value) = f.closed_form_modulus(delta) {
        return Ok(ModulusEstimate { delta, value, kind: ModulusKind::ClosedForm });
    }
    let (a, b) = interval;
    if grid_size < 2 || !(a < b) {
        return Err(Error::InvalidGrid(format!("need >= 2 points on a < b, got {grid_size} on [{a}, {b}]")));
    }
    let xs = uniform_grid(a, b, grid_size);
    let ys: Vec<f64> = xs.iter().map(|&x| f.eval(x)).collect();
    let h = (b - a) / (grid_size - 1) as f64;
    let window = ((delta / h) * (1.0 + 1e-12)).floor() as usize;
    let mut value: f64 = 0.0;
    for i in 0..ys.len() {
        let end = (i + window).min(ys.len() - 1);
        for y in &ys[i + 1..=end] {
            value = value.max((y - ys[i]).abs());
        }
    }
    Ok(ModulusEstimate { delta, value, kind: ModulusKind::GridLowerBound })
}

fn closed_modulus(f: &SampledFunction, delta: f64) -> Result<f64> {
    f.closed_form_modulus(delta).ok_or_else(|| {
        Error::ModulusUnavailable(format!("{} has no closed-form modulus", f.name()))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShapeReport {
    pub is_nondecreasing: bool,
    pub is_nonincreasing: bool,
    pub is_quasi_concave: bool,
    pub is_concave: bool,
    /// Leftmost global maximiser `c'`.
    pub peak: f64,
    pub peak_index: usize,
    /// Largest adjacent move against the rise-then-fall pattern.
    pub violation_magnitude: f64,
}

/// Shape of the sampled values `ys` over the ordered grid `xs`.
pub fn is_shape(xs: &[f64], ys: &[f64]) -> Result<ShapeReport> {
    if xs.len() < 3 || xs.len() != ys.len() {
        return Err(Error::InvalidGrid(format!(
            "shape test needs >= 3 matching points, got {} and {}",
            xs.len(),
            ys.len()
        )));
    }
    if xs.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidGrid("shape grid must be strictly increasing".into()));
    }
    let tol = SHAPE_TOLERANCE;
    let diffs: Vec<f64> = ys.windows(2).map(|w| w[1] - w[0]).collect();
    let is_nondecreasing = diffs.iter().all(|&d| d >= -tol);
    let is_nonincreasing = diffs.iter().all(|&d| d <= tol);

    let peak_index = leftmost_argmax(ys);
    let rising = diffs[..peak_index].iter().map(|&d| -d);
    let falling = diffs[peak_index..].iter().copied();
    let violation_magnitude = rising.chain(falling).fold(0.0, f64::max);
    let is_quasi_concave = violation_magnitude <= tol;

    // y_{i+1} must lie on or above the chord through its neighbours
    let is_concave = xs.windows(3).zip(ys.windows(3)).all(|(x, y)| {
        let chord = ((x[2] - x[1]) * y[0] + (x[1] - x[0]) * y[2]) / (x[2] - x[0]);
        y[1] >= chord - tol
    });

    Ok(ShapeReport {
        is_nondecreasing,
        is_nonincreasing,
        is_quasi_concave,
        is_concave,
        peak: xs[peak_index],
        peak_index,
        violation_magnitude,
    })
}

/// Shape of `f` on a uniform grid over `interval`.
pub fn function_shape(f: &SampledFunction, interval: (f64, f64), grid_size: usize) -> Result<ShapeReport> {
    let xs = uniform_grid(interval.0, interval.1, grid_size);
    let ys: Vec<f64> = xs.iter().map(|&x| f.eval(x)).collect();
    is_shape(&xs, &ys)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub measured_sup_error: f64,
    pub theoretical_bound: f64,
    pub slack: f64,
    pub pass: bool,
}

impl BoundCheck {
    pub fn new(measured_sup_error: f64, theoretical_bound: f64) -> Self {
        let slack = theoretical_bound - measured_sup_error;
        Self { measured_sup_error, theoretical_bound, slack, pass: slack >= -BOUND_SLACK_TOLERANCE }
    }
}

/// `sup |U_n(f) - f|` over a uniform grid of `grid_size` points on `[a, b]`.
pub fn sup_error(ctx: &OperatorContext, f: &SampledFunction, grid_size: usize) -> Result<f64> {
    let (a, b) = ctx.interval();
    let samples = ctx.sample(f)?;
    let mut worst: f64 = 0.0;
    for x in uniform_grid(a, b, grid_size) {
        worst = worst.max((samples.max_product(x)? - f.eval(x)).abs());
    }
    Ok(worst)
}

/// `([b-a] + 1) · ω₁(f; δ)`.
fn scaled_modulus(ctx: &OperatorContext, f: &SampledFunction, delta: f64) -> Result<f64> {
    Ok((ctx.length_floor() + 1.0) * closed_modulus(f, delta)?)
}

/// `24([b-a]+1) ω₁(f; 1/√(n+1))`.
pub fn uniform_bound(ctx: &OperatorContext, f: &SampledFunction) -> Result<f64> {
    let n = ctx.degree() as f64;
    Ok(UNIFORM_CONSTANT * scaled_modulus(ctx, f, 1.0 / (n + 1.0).sqrt())?)
}

/// `2([b-a]+1) ω₁(f; 1/n)`.
pub fn concave_bound(ctx: &OperatorContext, f: &SampledFunction) -> Result<f64> {
    let n = ctx.degree() as f64;
    Ok(CONCAVE_CONSTANT * scaled_modulus(ctx, f, 1.0 / n)?)
}

pub fn check_uniform_bound(ctx: &OperatorContext, f: &SampledFunction) -> Result<BoundCheck> {
    check_uniform_bound_with_grid(ctx, f, DEFAULT_VERIFICATION_GRID)
}

pub fn check_uniform_bound_with_grid(
    ctx: &OperatorContext,
    f: &SampledFunction,
    grid_size: usize,
) -> Result<BoundCheck> {
    let bound = uniform_bound(ctx, f)?;
    Ok(BoundCheck::new(sup_error(ctx, f, grid_size)?, bound))
}

pub fn check_concave_bound(ctx: &OperatorContext, f: &SampledFunction) -> Result<BoundCheck> {
    check_concave_bound_with_grid(ctx, f, DEFAULT_VERIFICATION_GRID)
}

pub fn check_concave_bound_with_grid(
    ctx: &OperatorContext,
    f: &SampledFunction,
    grid_size: usize,
) -> Result<BoundCheck> {
    let xs = uniform_grid(ctx.interval().0, ctx.interval().1, grid_size);
    let ys: Vec<f64> = xs.iter().map(|&x| f.eval(x)).collect();
    if !is_shape(&xs, &ys)?.is_concave {
        return Err(Error::NotConcave(concavity_defect(&xs, &ys)));
    }
    let bound = concave_bound(ctx, f)?;
    Ok(BoundCheck::new(sup_error(ctx, f, grid_size)?, bound))
}

fn concavity_defect(xs: &[f64], ys: &[f64]) -> f64 {
    xs.windows(3)
        .zip(ys.windows(3))
        .map(|(x, y)| ((x[2] - x[1]) * y[0] + (x[1] - x[0]) * y[2]) / (x[2] - x[0]) - y[1])
        .fold(0.0, f64::max)
}

/// Outcome of the unimodality-preservation check for one degree.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnimodalReport {
    pub degree: usize,
    pub peak: f64,
    pub approximant_peak: f64,
    pub quasi_concave: bool,
    pub shape_violation: f64,
    pub displacement: f64,
    /// `(b-a)/(n-1) + grid step`, asserted.
    pub displacement_bound: f64,
    pub displacement_pass: bool,
    /// `(b-a)/(n+1)`, reported only.
    pub stated_displacement_bound: f64,
    /// `(b-a)(1/n + k*/(n(n-1))) + grid step` with `k*` the first knot
    /// maximiser, reported only.
    pub knot_displacement_bound: f64,
    pub peak_error: f64,
    /// `([b-a]+1) ω₁(f; 1/√(n+1))`, asserted.
    pub peak_error_bound: f64,
    pub peak_error_pass: bool,
    /// `([b-a]+1) ω₁(f; 1/(n+1))`, reported only.
    pub tight_peak_error_bound: f64,
}

impl UnimodalReport {
    pub fn passed(&self) -> bool {
        self.quasi_concave && self.displacement_pass && self.peak_error_pass
    }
}

pub fn check_unimodal_preservation(ctx: &OperatorContext, f: &SampledFunction, c: f64) -> Result<UnimodalReport> {
    check_unimodal_preservation_with_grid(ctx, f, c, DEFAULT_VERIFICATION_GRID)
}

pub fn check_unimodal_preservation_with_grid(
    ctx: &OperatorContext,
    f: &SampledFunction,
    c: f64,
    grid_size: usize,
) -> Result<UnimodalReport> {
    let (a, b) = ctx.interval();
    let n = ctx.degree();
    let xs = uniform_grid(a, b, grid_size);
    let fs: Vec<f64> = xs.iter().map(|&x| f.eval(x)).collect();
    let shape = is_shape(&xs, &fs)?;
    if !shape.is_quasi_concave {
        return Err(Error::NotUnimodal { peak: c, violation: shape.violation_magnitude });
    }
    let top = fs[shape.peak_index];
    if !ctx.contains(c) || f.eval(c) < top - SHAPE_TOLERANCE {
        return Err(Error::NotUnimodal { peak: c, violation: top - f.eval(c) });
    }

    let samples = ctx.sample(f)?;
    let curve = samples.curve(&xs)?;
    let curve_shape = is_shape(&xs, &curve.values)?;
    let step = (b - a) / (grid_size - 1) as f64;
    let displacement = (c - curve.peak).abs();
    let displacement_bound = (b - a) / (n - 1) as f64 + step;

    let k_star = leftmost_argmax(samples.values()) as f64;
    let nf = n as f64;
    let knot_displacement_bound = (b - a) * (1.0 / nf + k_star / (nf * (nf - 1.0))) + step;

    let peak_error = (samples.max_product(c)? - f.eval(c)).abs();
    let peak_error_bound = scaled_modulus(ctx, f, 1.0 / (nf + 1.0).sqrt())?;
    let tight_peak_error_bound = scaled_modulus(ctx, f, 1.0 / (nf + 1.0))?;

    Ok(UnimodalReport {
        degree: n,
        peak: c,
        approximant_peak: curve.peak,
        quasi_concave: curve_shape.is_quasi_concave,
        shape_violation: curve_shape.violation_magnitude,
        displacement,
        displacement_bound,
        displacement_pass: displacement <= displacement_bound,
        stated_displacement_bound: (b - a) / (nf + 1.0),
        knot_displacement_bound,
        peak_error,
        peak_error_bound,
        peak_error_pass: peak_error <= peak_error_bound + BOUND_SLACK_TOLERANCE,
        tight_peak_error_bound,
    })
}

/// Shape of `U_n(f)` on a uniform grid; a nondecreasing `f` must give a
/// nondecreasing curve.
pub fn approximant_shape(ctx: &OperatorContext, f: &SampledFunction, grid_size: usize) -> Result<ShapeReport> {
    let (a, b) = ctx.interval();
    let xs = uniform_grid(a, b, grid_size);
    let curve = ctx.evaluate_curve(f, &xs)?;
    is_shape(&xs, &curve.values)
}

/// Lower bounds of `U_n(f)` at the subinterval edges `e_j = a + (b-a)j/(n-1)`
/// and the knots `t_j = a + (b-a)j/n`.
///
/// The weight maximiser at `e_j` is `j`, so `U_n(f)(e_j) >= f(t_j)` always
/// holds; the variants `U_n(f)(e_j) >= f(e_j)` and `U_n(f)(t_j) >= f(t_j)` do
/// not hold in general and are only counted.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KnotLowerBoundReport {
    pub degree: usize,
    /// `min_j U(e_j) - f(t_j)`.
    pub worst_margin: f64,
    pub pass: bool,
    pub edge_violations: usize,
    pub knot_violations: usize,
}

pub fn knot_lower_bound(ctx: &OperatorContext, f: &SampledFunction) -> Result<KnotLowerBoundReport> {
    const TOL: f64 = 1e-12;
    let samples: KnotSamples = ctx.sample(f)?;
    let n = ctx.degree();
    let mut worst_margin = f64::INFINITY;
    let mut edge_violations = 0;
    for (j, &e) in ctx.subinterval_edges().iter().enumerate() {
        let u = samples.max_product(e)?;
        worst_margin = worst_margin.min(u - samples.values()[j]);
        if u < f.eval(e) - TOL {
            edge_violations += 1;
        }
    }
    let mut knot_violations = 0;
    for (&t, &v) in ctx.knots().iter().zip(samples.values()) {
        if samples.max_product(t)? < v - TOL {
            knot_violations += 1;
        }
    }
    Ok(KnotLowerBoundReport {
        degree: n,
        worst_margin,
        pass: worst_margin >= -TOL,
        edge_violations,
        knot_violations,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub sup_error: f64,
    pub bound_uniform: Option<f64>,
    pub bound_concave: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceTable {
    pub rows: Vec<ConvergenceRow>,
    /// Least-squares slope of `ln(error)` against `ln(n)`.
    pub slope: Option<f64>,
}

/// One table row; bounds are present only with a closed-form modulus, the
/// concave one only when `f` is concave on the grid.
pub fn convergence_row(
    f: &SampledFunction,
    interval: (f64, f64),
    n: usize,
    grid_size: usize,
) -> Result<ConvergenceRow> {
    let ctx = OperatorContext::new(n, interval.0, interval.1)?;
    let sup_error = sup_error(&ctx, f, grid_size)?;
    let bound_uniform = f.has_closed_form_modulus().then(|| uniform_bound(&ctx, f)).transpose()?;
    let concave = function_shape(f, interval, grid_size)?.is_concave;
    let bound_concave = (concave && f.has_closed_form_modulus())
        .then(|| concave_bound(&ctx, f))
        .transpose()?;
    Ok(ConvergenceRow { n, sup_error, bound_uniform, bound_concave })
}

pub fn convergence_table(
    f: &SampledFunction,
    interval: (f64, f64),
    n_list: &[usize],
    grid_size: usize,
) -> Result<ConvergenceTable> {
    check_degree_list(n_list)?;
    let rows = n_list
        .iter()
        .map(|&n| convergence_row(f, interval, n, grid_size))
        .collect::<Result<Vec<_>>>()?;
    Ok(table_from_rows(rows))
}

pub fn check_degree_list(n_list: &[usize]) -> Result<()> {
    if n_list.is_empty() || n_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidGrid(format!("degree list must be nonempty and increasing, got {n_list:?}")));
    }
    Ok(())
}

pub fn table_from_rows(rows: Vec<ConvergenceRow>) -> ConvergenceTable {
    let points: Vec<(f64, f64)> = rows.iter().map(|r| (r.n as f64, r.sup_error)).collect();
    ConvergenceTable { slope: loglog_slope(&points), rows }
}

/// Least-squares slope of `ln y` against `ln x` over points with `y > 0`.
pub fn loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    let logs: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if logs.len() < 2 {
        return None;
    }
    let m = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / m;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}
