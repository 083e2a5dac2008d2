#![no_main]

use axial_lab::ConfigPatch;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(patch) = ConfigPatch::from_json_str(text) {
        if let Ok(config) = patch.resolve() {
            assert!(config.trials >= 1);
            assert!(config.n_values.windows(2).all(|w| w[0] < w[1]));
        }
    }
});
