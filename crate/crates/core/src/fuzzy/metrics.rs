//! Scalar and interval characteristics of a fuzzy number, computed by
//! integrating its α-cut branches.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{FuzzyNumber, Membership};
use crate::error::{Error, Result};
use crate::quadrature::QuadratureConfig;

/// Nondecreasing `s: [0,1] -> [0,1]` with `s(0) = 0`, `s(1) = 1`.
#[derive(Clone)]
pub enum ReductionFunction {
    /// `s(α) = α^r`. For `r = 0` this is `1` on `(0, 1]` and `0` at the origin.
    Power(u32),
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl fmt::Debug for ReductionFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionFunction::Power(r) => write!(f, "Power({r})"),
            ReductionFunction::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

impl ReductionFunction {
    pub fn power(r: u32) -> Self {
        ReductionFunction::Power(r)
    }

    /// Wrap a custom reduction function after checking it on a 1025-point grid.
    pub fn custom<F>(s: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        const TOL: f64 = 1e-12;
        if s(0.0).abs() > TOL || (s(1.0) - 1.0).abs() > TOL {
            return Err(Error::InvalidReduction(format!(
                "need s(0) = 0 and s(1) = 1, got {} and {}",
                s(0.0),
                s(1.0)
            )));
        }
        let mut prev = s(0.0);
        for i in 1..=1024 {
            let v = s(i as f64 / 1024.0);
            if !(-TOL..=1.0 + TOL).contains(&v) {
                return Err(Error::InvalidReduction(format!("value {v} outside [0, 1]")));
            }
            if v < prev - TOL {
                return Err(Error::InvalidReduction(format!(
                    "not nondecreasing near α = {}",
                    i as f64 / 1024.0
                )));
            }
            prev = v;
        }
        Ok(ReductionFunction::Custom(Arc::new(s)))
    }

    pub fn eval(&self, alpha: f64) -> f64 {
        match self {
            ReductionFunction::Power(_) if alpha <= 0.0 => 0.0,
            ReductionFunction::Power(r) => alpha.powi(*r as i32),
            ReductionFunction::Custom(s) => s(alpha),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpectedInterval {
    pub lo: f64,
    pub hi: f64,
}

impl ExpectedInterval {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

fn integrate(u: &FuzzyNumber, q: &QuadratureConfig, f: impl Fn(f64) -> f64) -> Result<f64> {
    q.integrate_open(f, &u.alpha_breakpoints())
}

/// `EI(u) = [∫u⁻, ∫u⁺]`.
pub fn expected_interval(u: &FuzzyNumber, q: &QuadratureConfig) -> Result<ExpectedInterval> {
    let lo = integrate(u, q, |a| u.lower_branch(a))?;
    let hi = integrate(u, q, |a| u.upper_branch(a))?;
    Ok(ExpectedInterval { lo, hi })
}

/// `EV(u) = ½∫(u⁻ + u⁺)`.
pub fn expected_value(u: &FuzzyNumber, q: &QuadratureConfig) -> Result<f64> {
    Ok(expected_interval(u, q)?.midpoint())
}

/// `wid(u) = ∫(u⁺ − u⁻)`.
pub fn width(u: &FuzzyNumber, q: &QuadratureConfig) -> Result<f64> {
    Ok(expected_interval(u, q)?.width())
}

/// `Val_s(u) = ∫ s(α)(u⁻(α) + u⁺(α)) dα`.
pub fn value_s(u: &FuzzyNumber, s: &ReductionFunction, q: &QuadratureConfig) -> Result<f64> {
    integrate(u, q, |a| s.eval(a) * (u.lower_branch(a) + u.upper_branch(a)))
}

/// `Amb_s(u) = ∫ s(α)(u⁺(α) − u⁻(α)) dα`.
pub fn ambiguity_s(u: &FuzzyNumber, s: &ReductionFunction, q: &QuadratureConfig) -> Result<f64> {
    integrate(u, q, |a| s.eval(a) * (u.upper_branch(a) - u.lower_branch(a)))
}

/// Exact characteristics for triangular, trapezoidal and piecewise-linear
/// shapes, obtained without α-cut inversion.
///
/// For `μ` nondecreasing on `[a, c]`, `u⁻(α) = a + |{x ∈ [a,c] : μ(x) < α}|`,
/// so `∫ α^r u⁻ = (a + ∫_a^c (1 − μ^{r+1})) / (r+1)`; the right branch gives
/// `∫ α^r u⁺ = (d + ∫_d^b μ^{r+1}) / (r+1)`.
pub mod closed_form {
    use super::*;

    /// `(∫ α^r u⁻ dα, ∫ α^r u⁺ dα)`; `None` for analytic shapes.
    pub fn weighted_branch_integrals(u: &FuzzyNumber, r: u32) -> Option<(f64, f64)> {
        let (a, b) = u.support();
        let (c, d) = u.core();
        let m = r + 1;
        let (left, right) = match u.membership_kind() {
            Membership::Trapezoidal([t1, t2, t3, t4]) => {
                // ∫ over a linear side of μ^m is (side length) / (m + 1)
                ((t2 - t1) / (m + 1) as f64, (t4 - t3) / (m + 1) as f64)
            }
            Membership::PiecewiseLinear(p) => (p.integrate_power(a, c, m), p.integrate_power(d, b, m)),
            Membership::Analytic(_) => return None,
        };
        let k = m as f64;
        Some(((a + (c - a) - left) / k, (d + right) / k))
    }

    pub fn expected_interval(u: &FuzzyNumber) -> Option<ExpectedInterval> {
        weighted_branch_integrals(u, 0).map(|(lo, hi)| ExpectedInterval { lo, hi })
    }

    pub fn value_power(u: &FuzzyNumber, r: u32) -> Option<f64> {
        weighted_branch_integrals(u, r).map(|(lo, hi)| lo + hi)
    }

    pub fn ambiguity_power(u: &FuzzyNumber, r: u32) -> Option<f64> {
        weighted_branch_integrals(u, r).map(|(lo, hi)| hi - lo)
    }
}
