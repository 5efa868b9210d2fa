//! Form tag and parameter list separated by `|`, e.g. `S3|0.2,0.3,0.4`.

#![no_main]

use libfuzzer_sys::fuzz_target;
use sinebound::bounds::{eval_bound, BoundForm, BoundParams};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    let Some((tag, params)) = s.split_once('|') else {
        return;
    };
    let Ok(form) = tag.parse::<BoundForm>() else {
        return;
    };
    let Ok(values) = sinebound_cli::parse_params(params) else {
        return;
    };
    if values.len() > 64 {
        return;
    }
    let Ok(p) = BoundParams::from_slice(form, &values) else {
        return;
    };
    if let Ok(b) = eval_bound(form, &p) {
        assert!(b.arg > 0.0 && b.arg < 1.0);
        assert!(b.log_value <= 0.0);
    }
});
