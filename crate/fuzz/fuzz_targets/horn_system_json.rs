//! Fuzz the Horn system JSON parser (used for the on-disk triple cache).
#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(system) = serde_json::from_str::<eigensum::horn::HornSystem>(text) {
            // Parsed systems may only contain valid, sorted triples.
            for triple in &system.triples {
                triple.validate(system.n).unwrap();
            }
            for pair in system.triples.windows(2) {
                assert!(pair[0] <= pair[1]);
            }
            let encoded = serde_json::to_string(&system).unwrap();
            let back: eigensum::horn::HornSystem = serde_json::from_str(&encoded).unwrap();
            assert_eq!(back, system);
        }
    }
});
