#![no_main]

use libfuzzer_sys::fuzz_target;
use spp_core::diagram::{render_ansi, render_html, render_json, table_from_json};

fuzz_target!(|data: &str| {
    if let Ok(table) = table_from_json(data) {
        assert_eq!(table_from_json(&render_json(&table)).unwrap(), table);
        let _ = render_ansi(&table);
        let _ = render_html(&table);
        let _ = table.zeros();
    }
});
