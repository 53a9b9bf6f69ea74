//! Quadrature over `[0, 1]` for the α-integrals of fuzzy-number characteristics.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_PANELS: usize = 1024;

/// Relative inward nudge applied to piece endpoints when breakpoints are given.
const ENDPOINT_NUDGE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case", deny_unknown_fields)]
pub enum QuadratureConfig {
    CompositeSimpson { panels: usize },
    Adaptive { tolerance: f64, max_evaluations: usize },
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig::CompositeSimpson { panels: DEFAULT_PANELS }
    }
}

impl QuadratureConfig {
    pub fn simpson(panels: usize) -> Result<Self> {
        let q = QuadratureConfig::CompositeSimpson { panels };
        q.validate()?;
        Ok(q)
    }

    pub fn adaptive(tolerance: f64) -> Result<Self> {
        let q = QuadratureConfig::Adaptive { tolerance, max_evaluations: 1 << 20 };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            QuadratureConfig::CompositeSimpson { panels } => {
                if panels < 2 || panels % 2 != 0 {
                    return Err(Error::InvalidQuadrature(format!(
                        "panel count must be even and >= 2, got {panels}"
                    )));
                }
            }
            QuadratureConfig::Adaptive { tolerance, max_evaluations } => {
                if !(tolerance > 0.0) || !tolerance.is_finite() {
                    return Err(Error::InvalidQuadrature(format!(
                        "tolerance must be positive, got {tolerance}"
                    )));
                }
                if max_evaluations < 5 {
                    return Err(Error::InvalidQuadrature("evaluation budget below 5".into()));
                }
            }
        }
        Ok(())
    }

    /// Integrate `f` over `[0, 1]`.
    ///
    /// `breakpoints` are interior points where `f` may have a kink or a jump;
    /// the rule is applied on each piece separately and endpoint samples are
    /// taken just inside the piece so one-sided limits are used.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, breakpoints: &[f64]) -> Result<f64> {
        self.integrate_pieces(f, breakpoints, false)
    }

    /// As [`Self::integrate`], but never samples exactly at `0`, `1` or a
    /// breakpoint; for integrands whose value at an endpoint differs from
    /// its one-sided limit.
    pub fn integrate_open<F: Fn(f64) -> f64>(&self, f: F, breakpoints: &[f64]) -> Result<f64> {
        self.integrate_pieces(f, breakpoints, true)
    }

    fn integrate_pieces<F: Fn(f64) -> f64>(&self, f: F, breakpoints: &[f64], open: bool) -> Result<f64> {
        self.validate()?;
        let mut cuts: Vec<f64> = breakpoints
            .iter()
            .copied()
            .filter(|&t| t > 0.0 && t < 1.0)
            .collect();
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        let nudge = open || !cuts.is_empty();
        let mut edges = Vec::with_capacity(cuts.len() + 2);
        edges.push(0.0);
        edges.extend(cuts);
        edges.push(1.0);

        match *self {
            QuadratureConfig::CompositeSimpson { panels } => Ok(edges
                .windows(2)
                .map(|w| {
                    let share = ((panels as f64) * (w[1] - w[0])).ceil() as usize;
                    let p = (share + share % 2).max(2);
                    simpson(&f, w[0], w[1], p, nudge)
                })
                .sum()),
            QuadratureConfig::Adaptive { tolerance, max_evaluations } => {
                let mut budget = max_evaluations;
                let pieces = edges.len() - 1;
                let mut total = 0.0;
                for w in edges.windows(2) {
                    let (lo, hi) = if nudge {
                        let eps = ENDPOINT_NUDGE * (w[1] - w[0]);
                        (w[0] + eps, w[1] - eps)
                    } else {
                        (w[0], w[1])
                    };
                    total += adaptive(&f, lo, hi, tolerance / pieces as f64, &mut budget)
                        .ok_or(Error::QuadratureFailure { budget: max_evaluations })?;
                }
                Ok(total)
            }
        }
    }
}

fn simpson<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, panels: usize, nudge: bool) -> f64 {
    let h = (hi - lo) / panels as f64;
    let eps = if nudge { ENDPOINT_NUDGE * (hi - lo) } else { 0.0 };
    let mut sum = f(lo + eps) + f(hi - eps);
    for i in 1..panels {
        let x = lo + h * i as f64;
        sum += if i % 2 == 1 { 4.0 } else { 2.0 } * f(x);
    }
    sum * h / 3.0
}

fn adaptive<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, tol: f64, budget: &mut usize) -> Option<f64> {
    let mid = 0.5 * (lo + hi);
    let (fl, fm, fh) = (f(lo), f(mid), f(hi));
    *budget = budget.checked_sub(3)?;
    let whole = (hi - lo) / 6.0 * (fl + 4.0 * fm + fh);
    adaptive_step(f, lo, hi, fl, fm, fh, whole, tol, 48, budget)
}

#[allow(clippy::too_many_arguments)]
fn adaptive_step<F: Fn(f64) -> f64>(
    f: &F,
    lo: f64,
    hi: f64,
    fl: f64,
    fm: f64,
    fh: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    budget: &mut usize,
) -> Option<f64> {
    let mid = 0.5 * (lo + hi);
    let (lm, rm) = (0.5 * (lo + mid), 0.5 * (mid + hi));
    let (flm, frm) = (f(lm), f(rm));
    *budget = budget.checked_sub(2)?;
    let left = (mid - lo) / 6.0 * (fl + 4.0 * flm + fm);
    let right = (hi - mid) / 6.0 * (fm + 4.0 * frm + fh);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return Some(left + right + delta / 15.0);
    }
    Some(
        adaptive_step(f, lo, mid, fl, flm, fm, left, 0.5 * tol, depth - 1, budget)?
            + adaptive_step(f, mid, hi, fm, frm, fh, right, 0.5 * tol, depth - 1, budget)?,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(QuadratureConfig::simpson(0).is_err());
        assert!(QuadratureConfig::simpson(3).is_err());
        assert!(QuadratureConfig::simpson(2).is_ok());
        assert!(QuadratureConfig::adaptive(0.0).is_err());
        assert!(QuadratureConfig::adaptive(-1.0).is_err());
        assert!(QuadratureConfig::adaptive(1e-10).is_ok());
    }

    #[test]
    fn simpson_is_exact_for_cubics() {
        let q = QuadratureConfig::simpson(2).unwrap();
        let v = q.integrate(|x| 4.0 * x * x * x - x + 2.0, &[]).unwrap();
        assert!((v - 2.5).abs() < 1e-15);
    }

    #[test]
    fn breakpoints_recover_kinked_integrals() {
        let f = |x: f64| (x - 0.3).abs();
        let exact = 0.5 * (0.09 + 0.49);
        let q = QuadratureConfig::default();
        let plain = q.integrate(f, &[]).unwrap();
        let split = q.integrate(f, &[0.3]).unwrap();
        assert!((split - exact).abs() < 1e-12);
        assert!((plain - exact).abs() > (split - exact).abs());
    }

    #[test]
    fn jump_is_integrated_from_both_sides() {
        let f = |x: f64| if x <= 0.5 { 1.0 } else { 3.0 };
        let v = QuadratureConfig::default().integrate(f, &[0.5]).unwrap();
        assert!((v - 2.0).abs() < 1e-10);
    }

    #[test]
    fn open_rule_uses_one_sided_limits() {
        let f = |x: f64| if x <= 0.0 { 0.0 } else { 1.0 };
        let q = QuadratureConfig::simpson(2).unwrap();
        assert!((q.integrate(f, &[]).unwrap() - 5.0 / 6.0).abs() < 1e-15);
        assert!((q.integrate_open(f, &[]).unwrap() - 1.0).abs() < 1e-11);
    }

    #[test]
    fn adaptive_matches_closed_form() {
        let q = QuadratureConfig::adaptive(1e-12).unwrap();
        let v = q.integrate(|x| x.sqrt(), &[]).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn adaptive_budget_exhaustion_is_reported() {
        let q = QuadratureConfig::Adaptive { tolerance: 1e-15, max_evaluations: 20 };
        let err = q.integrate(|x| (50.0 * x).sin(), &[]).unwrap_err();
        assert!(matches!(err, Error::QuadratureFailure { budget: 20 }));
    }
}
