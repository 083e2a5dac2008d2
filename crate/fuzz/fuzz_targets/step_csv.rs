#![no_main]

use axial_lab::harness::{read_step_csv, write_step_csv};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(steps) = read_step_csv(data) else { return };
    let mut out = Vec::new();
    write_step_csv(&mut out, &steps).unwrap();
    let back = read_step_csv(out.as_slice()).unwrap();
    assert_eq!(back.len(), steps.len());
});
