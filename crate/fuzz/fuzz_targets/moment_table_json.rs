//! Fuzz the moment-table JSON parser.
#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(table) = eigensum::qhorn::parse_moment_table(text) {
            let encoded = eigensum::qhorn::moment_table_to_json(&table);
            let back = eigensum::qhorn::parse_moment_table(&encoded).unwrap();
            assert_eq!(back.len(), table.len());
        }
    }
});
