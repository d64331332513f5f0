#![no_main]

use libfuzzer_sys::fuzz_target;
use zenoctl::output::parse_curve_csv;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(rows) = parse_curve_csv(text) {
        assert!(rows
            .iter()
            .all(|r| (0.0..=1.0).contains(&r.p_free) && (0.0..=1.0).contains(&r.p_interaction)));
    }
});
