//! Truncated Baskakov weights and operators on `[a, b]`.
//!
//! Every formula is evaluated in the unit coordinate `y = (x-a)/(b-a)`. On
//! the subinterval `[j/(n-1), (j+1)/(n-1)]` the largest weight is `b_{n,j}`,
//! so the max-product operator reduces to `max_k m_{k,n,j}(y) f_k` with
//! `m_{k,n,j} = b_{n,k}/b_{n,j} <= 1`. [`KnotSamples::max_product`] walks the
//! ratios outward from `j` with the recurrences
//!
//! ```text
//! b_{k+1}/b_k = (n+k)/(k+1) · y/(1+y)
//! b_{k-1}/b_k = k/(n+k-1) · (1+y)/y
//! ```
//!
//! while [`KnotSamples::max_product_oracle`] evaluates the plain ratio of
//! maxima in log space through `lgamma`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Above this degree `weight_ratio` switches from the log-difference to the
/// telescoping product.
pub const LOG_PATH_MAX_DEGREE: usize = 1000;

/// Slack allowed when checking that `x` lies in the closure of a subinterval.
const EDGE_SLACK: f64 = 1e-12;

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A nonnegative function on `[a, b]`, optionally carrying its closed-form
/// modulus of continuity `δ ↦ ω₁(f; δ)` on that interval.
#[derive(Clone)]
pub struct SampledFunction {
    name: String,
    f: RealFn,
    modulus: Option<RealFn>,
}

impl fmt::Debug for SampledFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SampledFunction")
            .field("name", &self.name)
            .field("closed_form_modulus", &self.modulus.is_some())
            .finish()
    }
}

impl SampledFunction {
    pub fn new<F>(name: impl Into<String>, f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self { name: name.into(), f: Arc::new(f), modulus: None }
    }

    pub fn with_modulus<M>(mut self, modulus: M) -> Self
    where
        M: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        self.modulus = Some(Arc::new(modulus));
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    pub fn closed_form_modulus(&self, delta: f64) -> Option<f64> {
        self.modulus.as_ref().map(|m| m(delta))
    }

    pub fn has_closed_form_modulus(&self) -> bool {
        self.modulus.is_some()
    }

    /// `λ·f`, with the modulus scaled accordingly.
    pub fn scaled(&self, lambda: f64) -> Self {
        let f = Arc::clone(&self.f);
        let modulus = self.modulus.as_ref().map(|m| {
            let m = Arc::clone(m);
            Arc::new(move |d| lambda.abs() * m(d)) as RealFn
        });
        Self {
            name: format!("{lambda}*{}", self.name),
            f: Arc::new(move |x| lambda * f(x)),
            modulus,
        }
    }
}

/// `m_{k,n,j}(x) = b_{n,k}(x) / b_{n,j}(x)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct WeightRatio(pub f64);

impl WeightRatio {
    pub fn value(self) -> f64 {
        self.0
    }
}

/// Degree and interval of the operator with its two grids: the `n+1` sample
/// knots `a+(b-a)k/n` and the `n` subinterval edges `a+(b-a)j/(n-1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorContext {
    n: usize,
    a: f64,
    b: f64,
    knots: Vec<f64>,
    edges: Vec<f64>,
}

impl OperatorContext {
    pub fn new(n: usize, a: f64, b: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidContext(format!("degree must be >= 2, got {n}")));
        }
        if !a.is_finite() || !b.is_finite() || a >= b {
            return Err(Error::InvalidContext(format!("need finite a < b, got [{a}, {b}]")));
        }
        let knots = (0..=n).map(|k| knot_position(a, b, k, n)).collect();
        let edges = (0..n).map(|j| knot_position(a, b, j, n - 1)).collect();
        Ok(Self { n, a, b, knots, edges })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn knot(&self, k: usize) -> f64 {
        self.knots[k]
    }

    pub fn subinterval_edges(&self) -> &[f64] {
        &self.edges
    }

    /// `[b - a]`, the integer part of the interval length.
    pub fn length_floor(&self) -> f64 {
        (self.b - self.a).floor()
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.a && x <= self.b
    }

    pub fn unit_coordinate(&self, x: f64) -> Result<f64> {
        if !self.contains(x) {
            return Err(Error::Domain { x, lo: self.a, hi: self.b });
        }
        Ok(((x - self.a) / (self.b - self.a)).clamp(0.0, 1.0))
    }

    fn check_index(&self, k: usize) -> Result<()> {
        if k > self.n {
            return Err(Error::InvalidContext(format!("weight index {k} outside 0..={}", self.n)));
        }
        Ok(())
    }

    /// `ln b_{n,k}(x)`; `-∞` at `x = a` for `k > 0`.
    pub fn basis_weight_log(&self, k: usize, x: f64) -> Result<f64> {
        self.check_index(k)?;
        let y = self.unit_coordinate(x)?;
        Ok(log_weight(self.n, k, y))
    }

    /// Index `j ∈ {0..n-2}` of the subinterval holding `x`; half-open
    /// `[e_j, e_{j+1})` except the last one, which is closed.
    pub fn subinterval_index(&self, x: f64) -> Result<usize> {
        Ok(self.subinterval_of_unit(self.unit_coordinate(x)?))
    }

    fn subinterval_of_unit(&self, y: f64) -> usize {
        let j = ((self.n - 1) as f64 * y).floor() as usize;
        j.min(self.n - 2)
    }

    /// `m_{k,n,j}(x)` for `x` in the closed `j`-th subinterval.
    pub fn weight_ratio(&self, k: usize, j: usize, x: f64) -> Result<WeightRatio> {
        self.check_index(k)?;
        if j > self.n - 2 {
            return Err(Error::InvalidContext(format!("subinterval {j} outside 0..={}", self.n - 2)));
        }
        let y = self.unit_coordinate(x)?;
        let (lo, hi) = (self.edges[j], self.edges[j + 1]);
        let slack = EDGE_SLACK * (self.b - self.a);
        if x < lo - slack || x > hi + slack {
            return Err(Error::Domain { x, lo, hi });
        }
        if k == j {
            return Ok(WeightRatio(1.0));
        }
        if self.n <= LOG_PATH_MAX_DEGREE {
            let diff = log_weight(self.n, k, y) - log_weight(self.n, j, y);
            Ok(WeightRatio(diff.exp()))
        } else {
            Ok(WeightRatio(telescoping_ratio(self.n, k, j, y)))
        }
    }

    /// Evaluate `f` at the knots, rejecting negative or non-finite samples.
    pub fn sample(&self, f: &SampledFunction) -> Result<KnotSamples> {
        let values: Vec<f64> = self.knots.iter().map(|&x| f.eval(x)).collect();
        KnotSamples::from_values(self.clone(), values)
    }

    pub fn max_product_apply(&self, f: &SampledFunction, x: f64) -> Result<f64> {
        self.unit_coordinate(x)?;
        self.sample(f)?.max_product(x)
    }

    pub fn max_product_apply_oracle(&self, f: &SampledFunction, x: f64) -> Result<f64> {
        self.unit_coordinate(x)?;
        self.sample(f)?.max_product_oracle(x)
    }

    /// Linear truncated operator `Σ_k b_{n,k}(x) f(knot_k)`. The weights sum
    /// to less than 1 for `x > a`, so constants are not reproduced.
    pub fn linear_truncated_apply(&self, f: &SampledFunction, x: f64) -> Result<f64> {
        let y = self.unit_coordinate(x)?;
        let values: Vec<f64> = self.knots.iter().map(|&t| f.eval(t)).collect();
        Ok(linear_sum(self.n, self.subinterval_of_unit(y), y, &values))
    }

    /// Max-product values on `grid` plus the leftmost maximiser.
    pub fn evaluate_curve(&self, f: &SampledFunction, grid: &[f64]) -> Result<ApproximantCurve> {
        self.sample(f)?.curve(grid)
    }
}

fn knot_position(a: f64, b: f64, k: usize, n: usize) -> f64 {
    if k == n {
        return b;
    }
    a + (b - a) * k as f64 / n as f64
}

/// `ln C(n+k-1, k)`.
fn log_binomial(n: usize, k: usize) -> f64 {
    libm::lgamma((n + k) as f64) - libm::lgamma((k + 1) as f64) - libm::lgamma(n as f64)
}

fn log_weight(n: usize, k: usize, y: f64) -> f64 {
    if y == 0.0 {
        return if k == 0 { 0.0 } else { f64::NEG_INFINITY };
    }
    log_binomial(n, k) + k as f64 * y.ln() - (n + k) as f64 * y.ln_1p()
}

fn telescoping_ratio(n: usize, k: usize, j: usize, y: f64) -> f64 {
    let mut m = 1.0;
    if k > j {
        let t = y / (1.0 + y);
        for i in j..k {
            m *= (n + i) as f64 / (i + 1) as f64 * t;
        }
    } else {
        let t = (1.0 + y) / y;
        for i in (k + 1..=j).rev() {
            m *= i as f64 / (n + i - 1) as f64 * t;
        }
    }
    m
}

/// `max_k m_{k,n,j}(y) · values[k]`, walking outward from `j`. The ratios
/// shrink away from `j`, so a side is abandoned once `m · vmax <= best`.
fn max_product_walk(n: usize, j: usize, y: f64, values: &[f64], vmax: f64) -> f64 {
    let mut best = values[j];
    let up = y / (1.0 + y);
    let mut m = 1.0;
    for k in j..n {
        m *= (n + k) as f64 / (k + 1) as f64 * up;
        if m * vmax <= best {
            break;
        }
        best = best.max(m.min(1.0) * values[k + 1]);
    }
    if j > 0 {
        let down = (1.0 + y) / y;
        let mut m = 1.0;
        for k in (1..=j).rev() {
            m *= k as f64 / (n + k - 1) as f64 * down;
            if m * vmax <= best {
                break;
            }
            best = best.max(m.min(1.0) * values[k - 1]);
        }
    }
    best
}

fn linear_sum(n: usize, j: usize, y: f64, values: &[f64]) -> f64 {
    let mut sum = values[j];
    let up = y / (1.0 + y);
    let mut m = 1.0;
    for k in j..n {
        m *= (n + k) as f64 / (k + 1) as f64 * up;
        sum += m * values[k + 1];
    }
    if j > 0 {
        let down = (1.0 + y) / y;
        let mut m = 1.0;
        for k in (1..=j).rev() {
            m *= k as f64 / (n + k - 1) as f64 * down;
            sum += m * values[k - 1];
        }
    }
    sum * log_weight(n, j, y).exp()
}

/// Knot samples `f(a+(b-a)k/n)` bound to their context, for repeated
/// evaluation of the operators.
#[derive(Debug, Clone, PartialEq)]
pub struct KnotSamples {
    ctx: OperatorContext,
    values: Vec<f64>,
    vmax: f64,
}

impl KnotSamples {
    pub fn from_values(ctx: OperatorContext, values: Vec<f64>) -> Result<Self> {
        if values.len() != ctx.n + 1 {
            return Err(Error::InvalidContext(format!(
                "expected {} knot values, got {}",
                ctx.n + 1,
                values.len()
            )));
        }
        if let Some((x, v)) = ctx
            .knots
            .iter()
            .zip(&values)
            .find(|(_, v)| !(v.is_finite() && **v >= 0.0))
        {
            return Err(Error::NegativeFunction { x: *x, value: *v });
        }
        let vmax = values.iter().copied().fold(0.0, f64::max);
        Ok(Self { ctx, values, vmax })
    }

    pub fn context(&self) -> &OperatorContext {
        &self.ctx
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn max_value(&self) -> f64 {
        self.vmax
    }

    pub fn max_product(&self, x: f64) -> Result<f64> {
        let y = self.ctx.unit_coordinate(x)?;
        let j = self.ctx.subinterval_of_unit(y);
        Ok(max_product_walk(self.ctx.n, j, y, &self.values, self.vmax))
    }

    /// Ratio of maxima evaluated directly, without the subinterval structure.
    pub fn max_product_oracle(&self, x: f64) -> Result<f64> {
        let y = self.ctx.unit_coordinate(x)?;
        let n = self.ctx.n;
        let mut num = f64::NEG_INFINITY;
        let mut den = f64::NEG_INFINITY;
        for (k, &v) in self.values.iter().enumerate() {
            let lw = log_weight(n, k, y);
            den = den.max(lw);
            if v > 0.0 {
                num = num.max(lw + v.ln());
            }
        }
        if num == f64::NEG_INFINITY {
            return Ok(0.0);
        }
        Ok((num - den).exp())
    }

    pub fn linear(&self, x: f64) -> Result<f64> {
        let y = self.ctx.unit_coordinate(x)?;
        Ok(linear_sum(self.ctx.n, self.ctx.subinterval_of_unit(y), y, &self.values))
    }

    pub fn curve(&self, grid: &[f64]) -> Result<ApproximantCurve> {
        if grid.is_empty() {
            return Err(Error::InvalidGrid("empty evaluation grid".into()));
        }
        let values = grid.iter().map(|&x| self.max_product(x)).collect::<Result<Vec<_>>>()?;
        let peak_index = leftmost_argmax(&values);
        Ok(ApproximantCurve {
            degree: self.ctx.n,
            interval: self.ctx.interval(),
            grid: grid.to_vec(),
            peak: grid[peak_index],
            peak_index,
            values,
            core_knots: None,
        })
    }
}

pub(crate) fn leftmost_argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if *v > values[best] {
            best = i;
        }
    }
    best
}

/// Sampled result of the max-product operator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApproximantCurve {
    pub degree: usize,
    pub interval: (f64, f64),
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    /// Leftmost grid maximiser `c'`.
    pub peak: f64,
    pub peak_index: usize,
    /// `(c_n, d_n)` when the curve approximates a fuzzy number.
    pub core_knots: Option<(f64, f64)>,
}

impl ApproximantCurve {
    pub fn sup_error(&self, f: &SampledFunction) -> f64 {
        self.grid
            .iter()
            .zip(&self.values)
            .map(|(&x, &v)| (v - f.eval(x)).abs())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(n: usize) -> OperatorContext {
        OperatorContext::new(n, 0.0, 1.0).unwrap()
    }

    fn identity() -> SampledFunction {
        SampledFunction::new("x", |x| x)
    }

    #[test]
    fn context_validation() {
        assert!(OperatorContext::new(1, 0.0, 1.0).is_err());
        assert!(OperatorContext::new(3, 1.0, 1.0).is_err());
        assert!(OperatorContext::new(3, 0.0, f64::NAN).is_err());
        let ctx = OperatorContext::new(4, 2.0, 4.0).unwrap();
        assert_eq!(ctx.knots(), &[2.0, 2.5, 3.0, 3.5, 4.0]);
        assert_eq!(ctx.subinterval_edges().len(), 4);
        assert_eq!(ctx.subinterval_edges()[0], 2.0);
        assert_eq!(*ctx.subinterval_edges().last().unwrap(), 4.0);
    }

    #[test]
    fn basis_weight_log_examples() {
        let ctx = unit(2);
        // b_{2,0}(x) = (1+x)^-2, b_{2,1}(x) = 2x(1+x)^-3
        let l0 = ctx.basis_weight_log(0, 0.5).unwrap();
        let l1 = ctx.basis_weight_log(1, 0.5).unwrap();
        assert!((l0 - (4.0f64 / 9.0).ln()).abs() < 1e-14);
        assert!((l1 - (8.0f64 / 27.0).ln()).abs() < 1e-14);
        for n in [2, 7, 60] {
            let ctx = OperatorContext::new(n, -3.0, 1.5).unwrap();
            assert_eq!(ctx.basis_weight_log(0, -3.0).unwrap(), 0.0);
            assert_eq!(ctx.basis_weight_log(1, -3.0).unwrap(), f64::NEG_INFINITY);
        }
        assert!(matches!(ctx.basis_weight_log(0, 1.5), Err(Error::Domain { .. })));
        assert!(ctx.basis_weight_log(3, 0.5).is_err());
    }

    #[test]
    fn subinterval_index_examples() {
        assert_eq!(unit(3).subinterval_index(0.3).unwrap(), 0);
        assert_eq!(unit(3).subinterval_index(0.5).unwrap(), 1);
        assert_eq!(unit(3).subinterval_index(1.0).unwrap(), 1);
        let ctx = OperatorContext::new(11, 2.0, 4.0).unwrap();
        assert_eq!(ctx.subinterval_index(3.0).unwrap(), 5);
        assert_eq!(ctx.subinterval_index(2.0).unwrap(), 0);
        assert!(ctx.subinterval_index(4.0001).is_err());
        assert_eq!(unit(2).subinterval_index(1.0).unwrap(), 0);
    }

    #[test]
    fn weight_ratio_examples() {
        let ctx = unit(2);
        assert_eq!(ctx.weight_ratio(0, 0, 0.3).unwrap().value(), 1.0);
        let m = ctx.weight_ratio(2, 0, 0.3).unwrap().value();
        assert!((m - 27.0 / 169.0).abs() < 1e-15);
        let ctx = unit(9);
        assert_eq!(ctx.weight_ratio(4, 4, 0.55).unwrap().value(), 1.0);
        // outside the closure of subinterval 4 = [0.5, 0.625]
        assert!(ctx.weight_ratio(2, 4, 0.7).is_err());
        assert!(ctx.weight_ratio(2, 8, 0.7).is_err());
    }

    #[test]
    fn weight_ratio_chain_is_monotone() {
        let ctx = OperatorContext::new(17, -1.0, 2.0).unwrap();
        for j in 0..=15 {
            let (lo, hi) = (ctx.subinterval_edges()[j], ctx.subinterval_edges()[j + 1]);
            for s in 1..8 {
                let x = lo + (hi - lo) * s as f64 / 8.0;
                let m: Vec<f64> = (0..=17).map(|k| ctx.weight_ratio(k, j, x).unwrap().value()).collect();
                for k in j..17 {
                    assert!(m[k] >= m[k + 1] && m[k] <= 1.0 + 1e-12);
                }
                for k in 0..j {
                    assert!(m[k] <= m[k + 1] && m[k + 1] <= 1.0 + 1e-12);
                }
            }
        }
    }

    #[test]
    fn telescoping_matches_log_difference() {
        for &(n, k, j, y) in &[(50, 3, 20, 0.41), (200, 180, 100, 0.5), (120, 0, 60, 0.503), (9, 9, 7, 0.9)] {
            let t = telescoping_ratio(n, k, j, y);
            let l = (log_weight(n, k, y) - log_weight(n, j, y)).exp();
            assert!((t - l).abs() <= 1e-12 * l.max(1e-300), "n={n} k={k} j={j}: {t} vs {l}");
        }
        // the large-degree path
        let ctx = OperatorContext::new(1500, 0.0, 1.0).unwrap();
        let x = 0.3;
        let j = ctx.subinterval_index(x).unwrap();
        let m = ctx.weight_ratio(j + 3, j, x).unwrap().value();
        let l = (log_weight(1500, j + 3, x) - log_weight(1500, j, x)).exp();
        assert!((m - l).abs() < 1e-10 * l);
    }

    #[test]
    fn max_product_hand_values() {
        let ctx = unit(2);
        let f = identity();
        assert!((ctx.max_product_apply(&f, 0.5).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!((ctx.max_product_apply(&f, 1.0).unwrap() - 0.75).abs() < 1e-15);
        assert!((ctx.max_product_apply_oracle(&f, 0.5).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!((ctx.max_product_apply_oracle(&f, 1.0).unwrap() - 0.75).abs() < 1e-15);
    }

    #[test]
    fn constants_are_reproduced() {
        let c = SampledFunction::new("c", |_| 7.3);
        for n in [2, 3, 10, 99] {
            let ctx = OperatorContext::new(n, -2.0, 5.0).unwrap();
            for i in 0..=50 {
                let x = -2.0 + 7.0 * i as f64 / 50.0;
                assert!((ctx.max_product_apply(&c, x).unwrap() - 7.3).abs() < 1e-12);
                assert!((ctx.max_product_apply_oracle(&c, x).unwrap() - 7.3).abs() < 1e-12);
            }
        }
        assert_eq!(unit(4).max_product_apply_oracle(&SampledFunction::new("1", |_| 1.0), 0.2).unwrap(), 1.0);
    }

    #[test]
    fn left_endpoint_is_interpolated() {
        let f = SampledFunction::new("g", |x: f64| 2.0 + x.sin());
        for n in 2..30 {
            let ctx = OperatorContext::new(n, 0.5, 3.0).unwrap();
            assert_eq!(ctx.max_product_apply(&f, 0.5).unwrap(), f.eval(0.5));
        }
    }

    #[test]
    fn negative_samples_are_rejected() {
        let f = SampledFunction::new("x-0.5", |x| x - 0.5);
        assert!(matches!(unit(4).max_product_apply(&f, 0.6), Err(Error::NegativeFunction { .. })));
        let nan = SampledFunction::new("nan", |_| f64::NAN);
        assert!(unit(4).sample(&nan).is_err());
        assert!(matches!(unit(4).max_product_apply(&identity(), 1.5), Err(Error::Domain { .. })));
    }

    #[test]
    fn linear_operator_values() {
        let ctx = unit(2);
        let one = SampledFunction::new("1", |_| 1.0);
        assert!((ctx.linear_truncated_apply(&one, 1.0).unwrap() - 11.0 / 16.0).abs() < 1e-15);
        assert!((ctx.linear_truncated_apply(&identity(), 1.0).unwrap() - 5.0 / 16.0).abs() < 1e-15);
        let f = SampledFunction::new("g", |x: f64| 1.0 + x * x);
        let ctx = OperatorContext::new(12, 1.0, 2.0).unwrap();
        assert_eq!(ctx.linear_truncated_apply(&f, 1.0).unwrap(), 2.0);
        // truncation: weights sum to less than one inside (a, b]
        for i in 1..=10 {
            let x = 1.0 + i as f64 / 10.0;
            assert!(ctx.linear_truncated_apply(&one, x).unwrap() < 1.0);
        }
    }

    #[test]
    fn linear_matches_direct_sum() {
        let ctx = OperatorContext::new(40, 0.0, 2.0).unwrap();
        let f = SampledFunction::new("g", |x: f64| (x * 3.0).cos() + 1.5);
        for i in 0..=20 {
            let x = 2.0 * i as f64 / 20.0;
            let direct: f64 = (0..=40)
                .map(|k| ctx.basis_weight_log(k, x).unwrap().exp() * f.eval(ctx.knot(k)))
                .sum();
            let fast = ctx.linear_truncated_apply(&f, x).unwrap();
            assert!((fast - direct).abs() < 1e-13, "x={x}");
        }
    }

    #[test]
    fn curve_peak_and_single_point() {
        let one = SampledFunction::new("1", |_| 1.0);
        let ctx = unit(5);
        let grid = crate::uniform_grid(0.0, 1.0, 101);
        let c = ctx.evaluate_curve(&one, &grid).unwrap();
        assert!(c.values.iter().all(|v| (v - 1.0).abs() < 1e-15));
        assert_eq!(c.peak, 0.0);
        let f = SampledFunction::new("g", |x| 0.3 + x);
        let c = ctx.evaluate_curve(&f, &[0.0]).unwrap();
        assert_eq!(c.values, vec![0.3]);
        assert!(ctx.evaluate_curve(&f, &[]).is_err());
        assert!(ctx.evaluate_curve(&f, &[0.5, 1.2]).is_err());
    }
}
