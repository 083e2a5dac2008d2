#![no_main]

use axial_lab::analytic::fit_power_law;
use axial_lab::harness::column_means;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(points) = column_means(data, "n", "total", None) {
        assert!(points.windows(2).all(|w| w[0].0 < w[1].0));
        let _ = fit_power_law(&points);
    }
});
