#![no_main]

use libfuzzer_sys::fuzz_target;
use spp_core::categories::{parse_transformation, SequenceSet};
use spp_core::{Profile, ProfileSequence};

fuzz_target!(|data: &str| {
    let Ok(t) = parse_transformation(data) else { return };
    let text = serde_json::to_string(&t).unwrap();
    assert_eq!(parse_transformation(&text).unwrap(), t);
    let set: SequenceSet = [ProfileSequence::single(Profile::NORM)].into();
    let _ = t.apply(&set);
});
