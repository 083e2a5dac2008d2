#![no_main]

use axial_lab::{Algo, CostModel, Emit, ExactMethod, MRule};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let _ = s.parse::<Algo>();
    let _ = s.parse::<CostModel>();
    let _ = s.parse::<Emit>();
    let _ = s.parse::<ExactMethod>();
    if let Ok(rule) = s.parse::<MRule>() {
        let shown = match rule {
            MRule::Default => "default".to_string(),
            MRule::Full => "full".to_string(),
            MRule::Explicit(m) => m.to_string(),
        };
        assert_eq!(shown.parse::<MRule>().unwrap(), rule);
    }
});
