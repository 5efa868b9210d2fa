#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(values) = sinebound_cli::parse_params(s) {
        assert!(values.iter().all(|v| v.is_finite()));
        assert_eq!(values.len(), s.split(',').count());
    }
});
