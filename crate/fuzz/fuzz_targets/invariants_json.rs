#![no_main]

use libfuzzer_sys::fuzz_target;
use spp_core::miner::{invariants_to_json, parse_invariants_json};

fuzz_target!(|data: &str| {
    if let Ok(records) = parse_invariants_json(data) {
        assert_eq!(parse_invariants_json(&invariants_to_json(&records)).unwrap(), records);
    }
});
