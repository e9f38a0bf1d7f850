//! Fuzz the Hermitian matrix JSON parser; accepted matrices must satisfy the
//! Hermitian invariant and survive an eigendecomposition.
#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(m) = serde_json::from_str::<eigensum::linalg::HermitianMatrix>(text) {
            if m.dim() <= 16 {
                let spectrum = eigensum::linalg::eigenvalues(&m).unwrap();
                let trace_gap = (spectrum.values().iter().sum::<f64>() - m.trace()).abs();
                assert!(trace_gap <= 1e-8 * m.dim() as f64 * (1.0 + m.matrix().max_norm()));
            }
            let encoded = serde_json::to_string(&m).unwrap();
            let back: eigensum::linalg::HermitianMatrix = serde_json::from_str(&encoded).unwrap();
            assert_eq!(back.dim(), m.dim());
        }
    }
});
