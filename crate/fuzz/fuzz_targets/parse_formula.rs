#![no_main]

use libfuzzer_sys::fuzz_target;
use spp_core::logic::{parse_formula, Prover};
use spp_core::AxiomBase;

fuzz_target!(|data: &str| {
    let Ok(f) = parse_formula(data) else { return };
    // the printer's output must parse back to the same tree
    let printed = f.to_string();
    assert_eq!(parse_formula(&printed).unwrap(), f, "{printed}");
    // small budget: the search must stop, not necessarily decide
    let _ = Prover::new(&AxiomBase::new()).with_budget(10_000).derives(&f);
});
