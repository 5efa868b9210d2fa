#![no_main]

use libfuzzer_sys::fuzz_target;
use sinebound::audit::{reports_from_json, reports_to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(reports) = reports_from_json(s) else {
        return;
    };
    let text = reports_to_json(&reports).expect("decoded reports serialize");
    let again = reports_from_json(&text).expect("own output parses");
    assert_eq!(reports_to_json(&again).unwrap(), text);
});
