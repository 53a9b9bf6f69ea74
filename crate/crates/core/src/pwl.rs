//! Piecewise-linear functions given by an ordered knot list.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Continuous piecewise-linear interpolant through `(xs[i], ys[i])`.
///
/// Outside `[xs[0], xs[last]]` the end values are held constant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PiecewiseLinear {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl PiecewiseLinear {
    pub fn new(knots: &[(f64, f64)]) -> Result<Self> {
        if knots.len() < 2 {
            return Err(Error::InvalidGrid(format!(
                "piecewise-linear function needs at least 2 knots, got {}",
                knots.len()
            )));
        }
        if knots.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
            return Err(Error::InvalidGrid("non-finite knot".into()));
        }
        if let Some(w) = knots.windows(2).find(|w| w[0].0 >= w[1].0) {
            return Err(Error::InvalidGrid(format!(
                "knot abscissae must be strictly increasing ({} then {})",
                w[0].0, w[1].0
            )));
        }
        Ok(Self {
            xs: knots.iter().map(|k| k.0).collect(),
            ys: knots.iter().map(|k| k.1).collect(),
        })
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.xs[0], self.xs[self.xs.len() - 1])
    }

    pub fn knots(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.xs.iter().copied().zip(self.ys.iter().copied())
    }

    pub fn eval(&self, x: f64) -> f64 {
        let last = self.xs.len() - 1;
        if x <= self.xs[0] {
            return self.ys[0];
        }
        if x >= self.xs[last] {
            return self.ys[last];
        }
        // first index with xs[i] > x; x lies in [xs[i-1], xs[i])
        let i = self.xs.partition_point(|&k| k <= x);
        let (x0, x1) = (self.xs[i - 1], self.xs[i]);
        let (y0, y1) = (self.ys[i - 1], self.ys[i]);
        if x == x0 {
            return y0;
        }
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }

    pub fn shifted(&self, delta: f64) -> Self {
        Self {
            xs: self.xs.iter().map(|x| x + delta).collect(),
            ys: self.ys.clone(),
        }
    }

    pub fn max_value(&self) -> f64 {
        self.ys.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min_value(&self) -> f64 {
        self.ys.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Exact modulus of continuity `sup{|f(x)-f(y)| : x,y in domain, |x-y| <= delta}`.
    ///
    /// For a fixed shift `t`, `x -> f(x+t)-f(x)` is piecewise linear with kinks
    /// where `x` or `x+t` hits a knot, so its extremes sit on those kinks. The
    /// sup over `t <= delta` is attained either at `t = delta` or at a pair of
    /// knots closer than `delta`.
    pub fn modulus(&self, delta: f64) -> f64 {
        if delta <= 0.0 {
            return 0.0;
        }
        let (lo, hi) = self.domain();
        if delta >= hi - lo {
            return self.max_value() - self.min_value();
        }
        let mut best: f64 = 0.0;
        // knot pairs within delta
        for i in 0..self.xs.len() {
            for j in i + 1..self.xs.len() {
                if self.xs[j] - self.xs[i] > delta {
                    break;
                }
                best = best.max((self.ys[j] - self.ys[i]).abs());
            }
        }
        let mut probe = |x: f64| {
            if x >= lo && x + delta <= hi {
                best = best.max((self.eval(x + delta) - self.eval(x)).abs());
            }
        };
        probe(lo);
        probe(hi - delta);
        for &k in &self.xs {
            probe(k);
            probe(k - delta);
        }
        best
    }

    /// `∫_lo^hi f(x)^power dx`, exact on every linear piece.
    pub fn integrate_power(&self, lo: f64, hi: f64, power: u32) -> f64 {
        if hi <= lo {
            return 0.0;
        }
        let mut cuts: Vec<f64> = vec![lo, hi];
        cuts.extend(self.xs.iter().copied().filter(|&x| x > lo && x < hi));
        cuts.sort_by(f64::total_cmp);
        cuts.windows(2)
            .map(|w| {
                let (x0, x1) = (w[0], w[1]);
                let len = x1 - x0;
                let mid = 0.5 * (x0 + x1);
                // endpoint values of the linear piece through the segment
                let i = self.xs.partition_point(|&k| k <= mid).clamp(1, self.xs.len() - 1);
                let line = |x: f64| {
                    let (a0, a1) = (self.xs[i - 1], self.xs[i]);
                    let (b0, b1) = (self.ys[i - 1], self.ys[i]);
                    b0 + (b1 - b0) * (x - a0) / (a1 - a0)
                };
                power_segment_integral(line(x0), line(x1), len, power)
            })
            .sum()
    }
}

/// `∫` over a segment of length `len` of a linear function going from `p` to `q`, raised to `m`.
pub(crate) fn power_segment_integral(p: f64, q: f64, len: f64, m: u32) -> f64 {
    let m1 = m as i32 + 1;
    if (q - p).abs() <= 1e-15 * (p.abs() + q.abs()).max(1e-300) {
        return len * p.powi(m as i32);
    }
    len * (q.powi(m1) - p.powi(m1)) / (m1 as f64 * (q - p))
}
