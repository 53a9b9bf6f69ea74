use baskafuzz_core::fuzzy::{
    ambiguity_s, closed_form, expected_interval, expected_value, to_alpha_cuts, value_s, ReductionFunction,
};
use baskafuzz_core::shape::knot_lower_bound;
use baskafuzz_core::{FuzzyNumber, OperatorContext, QuadratureConfig, SampledFunction};
use proptest::prelude::*;

fn interval() -> impl Strategy<Value = (f64, f64)> {
    (-5.0..4.0f64, 0.05..5.0f64).prop_map(|(a, len)| (a, (a + len).min(5.0)))
}

/// Nonnegative piecewise-linear function through `ys` at equally spaced
/// points of `[a, b]`.
fn pl(a: f64, b: f64, ys: Vec<f64>) -> SampledFunction {
    SampledFunction::new("pl", move |x: f64| {
        let t = ((x - a) / (b - a)).clamp(0.0, 1.0) * (ys.len() - 1) as f64;
        let i = (t.floor() as usize).min(ys.len() - 2);
        ys[i] + (ys[i + 1] - ys[i]) * (t - i as f64)
    })
}

fn values() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0..10.0f64, 2..9)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ratios_never_exceed_one((a, b) in interval(), n in 2usize..60, s in 0.0..1.0f64) {
        let ctx = OperatorContext::new(n, a, b).unwrap();
        let x = a + (b - a) * s;
        let j = ctx.subinterval_index(x).unwrap();
        for k in 0..=n {
            let m = ctx.weight_ratio(k, j, x).unwrap().value();
            prop_assert!((0.0..=1.0 + 1e-12).contains(&m), "k={} j={} m={}", k, j, m);
        }
    }

    #[test]
    fn governing_weight_is_largest((a, b) in interval(), n in 2usize..80, s in 0.0..1.0f64) {
        let ctx = OperatorContext::new(n, a, b).unwrap();
        let x = a + (b - a) * s;
        let j = ctx.subinterval_index(x).unwrap();
        let lj = ctx.basis_weight_log(j, x).unwrap();
        for k in 0..=n {
            prop_assert!(ctx.basis_weight_log(k, x).unwrap() <= lj + 1e-12);
        }
    }

    #[test]
    fn fast_path_matches_oracle((a, b) in interval(), n in 2usize..200, ys in values(), s in 0.0..1.0f64) {
        let ctx = OperatorContext::new(n, a, b).unwrap();
        let f = pl(a, b, ys);
        let x = a + (b - a) * s;
        let fast = ctx.max_product_apply(&f, x).unwrap();
        let slow = ctx.max_product_apply_oracle(&f, x).unwrap();
        prop_assert!((fast - slow).abs() <= 1e-10 * (1.0 + fast.abs()));
    }

    #[test]
    fn constants_homogeneity_and_endpoint((a, b) in interval(), n in 2usize..64, ys in values(),
                                          lambda in 0.01..50.0f64, c in 0.0..20.0f64, s in 0.0..1.0f64) {
        let ctx = OperatorContext::new(n, a, b).unwrap();
        let x = a + (b - a) * s;
        let k = SampledFunction::new("c", move |_| c);
        prop_assert!((ctx.max_product_apply(&k, x).unwrap() - c).abs() <= 1e-12 * (1.0 + c));

        let f = pl(a, b, ys);
        let scaled = f.scaled(lambda);
        let u = ctx.max_product_apply(&f, x).unwrap();
        let v = ctx.max_product_apply(&scaled, x).unwrap();
        prop_assert!((v - lambda * u).abs() <= 1e-12 * (1.0 + (lambda * u).abs()));
        prop_assert!((ctx.max_product_apply(&f, a).unwrap() - f.eval(a)).abs() <= 1e-12);
    }

    #[test]
    fn monotone_in_the_function((a, b) in interval(), n in 2usize..64, ys in values(),
                                bump in prop::collection::vec(0.0..3.0f64, 9), s in 0.0..1.0f64) {
        let ctx = OperatorContext::new(n, a, b).unwrap();
        let m = ys.len();
        let bigger: Vec<f64> = ys.iter().zip(&bump).map(|(y, d)| y + d).collect();
        let (f, g) = (pl(a, b, ys), pl(a, b, bigger[..m].to_vec()));
        let x = a + (b - a) * s;
        prop_assert!(ctx.max_product_apply(&f, x).unwrap() <= ctx.max_product_apply(&g, x).unwrap() + 1e-12);
    }

    #[test]
    fn bounded_by_knot_maximum((a, b) in interval(), n in 2usize..100, ys in values(), s in 0.0..1.0f64) {
        let ctx = OperatorContext::new(n, a, b).unwrap();
        let f = pl(a, b, ys);
        let samples = ctx.sample(&f).unwrap();
        let x = a + (b - a) * s;
        prop_assert!(samples.max_product(x).unwrap() <= samples.max_value() * (1.0 + 1e-15));
    }

    #[test]
    fn edge_lower_bound((a, b) in interval(), n in 2usize..64, ys in values()) {
        let ctx = OperatorContext::new(n, a, b).unwrap();
        prop_assert!(knot_lower_bound(&ctx, &pl(a, b, ys)).unwrap().pass);
    }

    #[test]
    fn linear_weights_sum_below_one((a, b) in interval(), n in 2usize..64, s in 0.0..1.0f64) {
        let ctx = OperatorContext::new(n, a, b).unwrap();
        let one = SampledFunction::new("1", |_| 1.0);
        let v = ctx.linear_truncated_apply(&one, a + (b - a) * s).unwrap();
        prop_assert!(v > 0.0 && v <= 1.0 + 1e-13);
        // the dropped tail k > n is visible in double precision for y >= 1/2
        if s >= 0.5 {
            prop_assert!(v < 1.0);
        }
    }
}

fn trapezoid() -> impl Strategy<Value = FuzzyNumber> {
    (-3.0..3.0f64, 0.0..2.0f64, 0.0..2.0f64, 0.0..2.0f64).prop_map(|(t1, l, m, r)| {
        FuzzyNumber::trapezoidal(t1, t1 + l, t1 + l + m, t1 + l + m + r).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn metrics_are_translation_equivariant(u in trapezoid(), t in -4.0..4.0f64) {
        let q = QuadratureConfig::default();
        let v = u.shifted(t);
        let (e0, e1) = (expected_interval(&u, &q).unwrap(), expected_interval(&v, &q).unwrap());
        prop_assert!((e1.lo - e0.lo - t).abs() < 1e-9 && (e1.hi - e0.hi - t).abs() < 1e-9);
        prop_assert!((expected_value(&v, &q).unwrap() - expected_value(&u, &q).unwrap() - t).abs() < 1e-9);
        prop_assert!((e1.width() - e0.width()).abs() < 1e-9);
    }

    #[test]
    fn ambiguity_decreases_with_power(u in trapezoid()) {
        let q = QuadratureConfig::default();
        let amb: Vec<f64> = (0..6).map(|r| ambiguity_s(&u, &ReductionFunction::power(r), &q).unwrap()).collect();
        for w in amb.windows(2) {
            prop_assert!(w[1] <= w[0] + 1e-12);
        }
    }

    #[test]
    fn closed_forms_agree(u in trapezoid(), r in 0u32..5) {
        let q = QuadratureConfig::default();
        let s = ReductionFunction::power(r);
        let v = value_s(&u, &s, &q).unwrap();
        let a = ambiguity_s(&u, &s, &q).unwrap();
        prop_assert!((v - closed_form::value_power(&u, r).unwrap()).abs() < 1e-10);
        prop_assert!((a - closed_form::ambiguity_power(&u, r).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn alpha_cuts_are_nested(u in trapezoid(), m in 2usize..40) {
        let cuts = to_alpha_cuts(&u, m).unwrap();
        prop_assert!(cuts.is_consistent());
        let (a, b) = u.support();
        prop_assert_eq!(cuts.lower[0], a);
        prop_assert_eq!(cuts.upper[0], b);
    }
}
