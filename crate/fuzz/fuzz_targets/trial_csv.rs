#![no_main]

use axial_lab::harness::{read_trial_csv, write_trial_csv};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(records) = read_trial_csv(data) else { return };
    let mut out = Vec::new();
    write_trial_csv(&mut out, &records).unwrap();
    let back = read_trial_csv(out.as_slice()).unwrap();
    assert_eq!(back.len(), records.len());
});
