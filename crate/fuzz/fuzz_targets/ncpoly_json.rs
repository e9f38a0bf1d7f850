//! Fuzz the word-polynomial JSON parser with arbitrary bytes.
#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(poly) = serde_json::from_str::<eigensum::ncwords::NCPoly>(text) {
            // Round-trip: encode back and re-decode.
            let encoded = serde_json::to_string(&poly).unwrap();
            let back: eigensum::ncwords::NCPoly = serde_json::from_str(&encoded).unwrap();
            assert_eq!(back, poly);
            // Exercise the orbit calculus on whatever parsed.
            let _ = eigensum::ncwords::is_commutator_element(&poly);
        }
    }
});
