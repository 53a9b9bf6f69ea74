#![no_main]

use baskafuzz_core::{KnotSamples, OperatorContext};
use libfuzzer_sys::fuzz_target;

fn word(data: &[u8], i: usize) -> Option<f64> {
    data.get(8 * i..8 * i + 8).map(|c| f64::from_le_bytes(c.try_into().unwrap()))
}

fuzz_target!(|data: &[u8]| {
    let Some(&first) = data.first() else { return };
    let data = &data[1..];
    let n = 2 + first as usize;
    let (Some(a), Some(b), Some(s)) = (word(data, 0), word(data, 1), word(data, 2)) else { return };
    let Ok(ctx) = OperatorContext::new(n, a, b) else { return };
    let values: Vec<f64> = (0..=n).map(|k| word(data, 3 + k).map_or(1.0, f64::abs)).collect();
    let Ok(samples) = KnotSamples::from_values(ctx, values) else { return };
    if !samples.values().iter().all(|v| v.is_finite()) || !s.is_finite() {
        return;
    }
    let (a, b) = samples.context().interval();
    let x = a + (b - a) * s.rem_euclid(1.0);
    if let (Ok(fast), Ok(slow)) = (samples.max_product(x), samples.max_product_oracle(x)) {
        assert!(fast <= samples.max_value() * (1.0 + 1e-12));
        // a winning ratio in the subnormal range carries too few bits to compare
        let normal_ratio = fast / samples.max_value() > 1e-290;
        if fast.is_normal() && slow.is_normal() && samples.max_value() < 1e300 && normal_ratio {
            assert!((fast - slow).abs() <= 1e-9 * fast.max(slow), "{fast} vs {slow}");
        }
    }
});
