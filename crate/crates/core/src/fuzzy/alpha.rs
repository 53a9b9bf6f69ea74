//! α-cut (LU parametric) representation of a fuzzy number.

use serde::{Deserialize, Serialize};

use super::FuzzyNumber;
use crate::error::{Error, Result};

/// Bisection stops once the bracket on `x` is this narrow.
pub const BISECTION_TOLERANCE: f64 = 1e-12;

/// Branch values `u⁻(α_i)`, `u⁺(α_i)` on `α_i = i / (m - 1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaCutRepresentation {
    pub alphas: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl AlphaCutRepresentation {
    /// `u⁻` nondecreasing, `u⁺` nonincreasing, `u⁻(1) <= u⁺(1)`.
    pub fn is_consistent(&self) -> bool {
        let lower_ok = self.lower.windows(2).all(|w| w[1] >= w[0]);
        let upper_ok = self.upper.windows(2).all(|w| w[1] <= w[0]);
        let top_ok = match (self.lower.last(), self.upper.last()) {
            (Some(l), Some(u)) => l <= u,
            _ => false,
        };
        lower_ok && upper_ok && top_ok
    }
}

impl FuzzyNumber {
    /// `u⁻(α) = inf{x : μ(x) >= α}`, with `u⁻(0) = a`.
    pub fn lower_branch(&self, alpha: f64) -> f64 {
        let (a, _) = self.support();
        let (c, _) = self.core();
        if alpha <= 0.0 {
            return a;
        }
        if alpha >= 1.0 {
            return c;
        }
        if self.membership(a) >= alpha {
            return a;
        }
        // μ(lo) < α <= μ(hi)
        let (mut lo, mut hi) = (a, c);
        while hi - lo > BISECTION_TOLERANCE {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.membership(mid) >= alpha {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// `u⁺(α) = sup{x : μ(x) >= α}`, with `u⁺(0) = b`.
    pub fn upper_branch(&self, alpha: f64) -> f64 {
        let (_, b) = self.support();
        let (_, d) = self.core();
        if alpha <= 0.0 {
            return b;
        }
        if alpha >= 1.0 {
            return d;
        }
        if self.membership(b) >= alpha {
            return b;
        }
        // μ(lo) >= α > μ(hi)
        let (mut lo, mut hi) = (d, b);
        while hi - lo > BISECTION_TOLERANCE {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.membership(mid) >= alpha {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

pub fn to_alpha_cuts(u: &FuzzyNumber, m: usize) -> Result<AlphaCutRepresentation> {
    if m < 2 {
        return Err(Error::InvalidGrid(format!("α grid needs at least 2 points, got {m}")));
    }
    let alphas: Vec<f64> = (0..m).map(|i| i as f64 / (m - 1) as f64).collect();
    let lower = alphas.iter().map(|&a| u.lower_branch(a)).collect();
    let upper = alphas.iter().map(|&a| u.upper_branch(a)).collect();
    Ok(AlphaCutRepresentation { alphas, lower, upper })
}
