#![no_main]

use libfuzzer_sys::fuzz_target;
use sinebound::audit::ClaimId;
use sinebound::bounds::BoundForm;
use sinebound::regions::{FigureId, Format};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(c) = s.parse::<ClaimId>() {
        assert_eq!(c.as_str(), s);
    }
    if let Ok(f) = s.parse::<BoundForm>() {
        assert_eq!(f.as_str(), s);
    }
    if let Ok(f) = s.parse::<FigureId>() {
        assert_eq!(f.as_str().parse::<FigureId>().ok(), Some(f));
    }
    let _ = s.parse::<Format>();
});
