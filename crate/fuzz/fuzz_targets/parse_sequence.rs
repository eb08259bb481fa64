#![no_main]

use libfuzzer_sys::fuzz_target;
use spp_core::profile::parse_sequence;

fuzz_target!(|data: &str| {
    if let Ok(seq) = parse_sequence(data) {
        let again = parse_sequence(&seq.to_text()).expect("printed sequences re-parse");
        assert_eq!(again, seq);
    }
});
