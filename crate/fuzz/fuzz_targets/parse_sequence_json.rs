#![no_main]

use libfuzzer_sys::fuzz_target;
use spp_core::profile::{parse_sequence_any, parse_sequence_json};

fuzz_target!(|data: &str| {
    if let Ok(seq) = parse_sequence_json(data) {
        assert_eq!(parse_sequence_json(&seq.to_json()).unwrap(), seq);
    }
    let _ = parse_sequence_any(data);
});
