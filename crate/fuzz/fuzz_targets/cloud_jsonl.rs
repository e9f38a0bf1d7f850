//! Fuzz the sample-cloud JSON-lines decoder with raw bytes.
#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let reader = std::io::BufReader::new(data);
    if let Ok(samples) = eigensum::qhorn::parse_cloud_jsonl(reader) {
        for s in &samples {
            // The deserializer must never admit an unsorted or non-finite γ.
            for pair in s.gamma.values().windows(2) {
                assert!(pair[0] >= pair[1]);
            }
            assert!(s.gamma.values().iter().all(|v| v.is_finite()));
        }
    }
});
