//! Truncated Baskakov operators of max-product kind on arbitrary compact
//! intervals, and their use for approximating fuzzy numbers.
//!
//! The operator of degree `n` on `[a, b]` is
//!
//! ```text
//! U_n(f)(x) = max_k b_{n,k}(x) f(a + (b-a)k/n) / max_k b_{n,k}(x)
//! b_{n,k}(x) = C(n+k-1, k) y^k (1+y)^(-n-k),   y = (x-a)/(b-a),  k = 0..n
//! ```
//!
//! * [`kernel`] evaluates the weights and the operators (max-product and the
//!   linear truncated sum), with an independent log-space oracle.
//! * [`fuzzy`] holds the fuzzy-number model and its characteristics.
//! * [`shape`] measures moduli of continuity, detects monotone / concave /
//!   quasi-concave shapes and checks the error and shape-preservation bounds.
//! * [`approx`] builds the fuzzy approximant and verifies support, core and
//!   uniform error.
//! * [`corpus`] is a set of test functions with closed-form moduli.

// `!(x > 0.0)` is used on purpose so that NaN fails the check
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod approx;
pub mod corpus;
pub mod error;
pub mod fuzzy;
pub mod kernel;
pub mod pwl;
pub mod quadrature;
pub mod shape;

pub use error::{Error, Result, Violation};
pub use fuzzy::FuzzyNumber;
pub use kernel::{ApproximantCurve, KnotSamples, OperatorContext, SampledFunction, WeightRatio};
pub use quadrature::QuadratureConfig;

/// Uniform grid of `points` values on `[lo, hi]` with both endpoints exact.
pub fn uniform_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let mut g: Vec<f64> = (0..points)
                .map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64)
                .collect();
            g[points - 1] = hi;
            g
        }
    }
}
