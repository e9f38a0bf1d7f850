//! Fuzz the comma-list parser for eigenvalue sequences (CLI flag values).
#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(seq) = eigensum::linalg::EigenvalueSequence::parse_comma_list(text) {
            for pair in seq.values().windows(2) {
                assert!(pair[0] >= pair[1]);
            }
            assert!(seq.values().iter().all(|v| v.is_finite()));
        }
    }
});
