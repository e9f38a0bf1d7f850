//! Fuzz the step-function JSON parser and the integral calculus on whatever
//! parses.
#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(f) = serde_json::from_str::<eigensum::horn::EigenvalueFunction>(text) {
            let total = f.integral();
            assert!(total.is_finite());
            // σ-integrals over the full grid must add up to the total.
            let n = 4;
            let parts: f64 = (1..=n).map(|i| f.sigma_integral(&[i], n).unwrap()).sum();
            assert!((parts - total).abs() <= 1e-9 * (1.0 + total.abs()));
            let coarse = f.coarsen(3);
            assert_eq!(coarse.len(), 3);
        }
    }
});
