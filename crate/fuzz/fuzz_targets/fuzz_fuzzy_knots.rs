#![no_main]

use baskafuzz_core::approx::approximate;
use baskafuzz_core::FuzzyNumber;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let knots: Vec<(f64, f64)> = data
        .chunks_exact(16)
        .take(32)
        .map(|c| {
            let x = f64::from_le_bytes(c[..8].try_into().unwrap());
            let y = f64::from_le_bytes(c[8..].try_into().unwrap());
            (x, y)
        })
        .collect();
    let Ok(u) = FuzzyNumber::piecewise_linear(&knots) else { return };
    let (a, b) = u.support();
    let (c, d) = u.core();
    assert!(a <= c && c <= d && d <= b);
    for i in 0..=16 {
        let x = a + (b - a) * i as f64 / 16.0;
        let m = u.membership(x);
        assert!((0.0..=1.0).contains(&m), "membership {m} at {x}");
    }
    if c < d && (b - a).is_finite() {
        let n = ((b - a) / (d - c)).floor() + 1.0;
        if n <= 64.0 {
            if let Ok(ap) = approximate(&u, n as usize) {
                for i in 0..=16 {
                    let v = ap.eval(a + (b - a) * i as f64 / 16.0);
                    assert!((0.0..=1.0 + 1e-12).contains(&v));
                }
            }
        }
    }
});
