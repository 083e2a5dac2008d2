#![no_main]

use axial_lab::io::{instance_from_json, instance_to_json};
use axial_lab::CostTensor;
use libfuzzer_sys::fuzz_target;

// Accepted instances must survive a write/read cycle unchanged.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(instance) = instance_from_json(text) else { return };
    let written = instance_to_json(&instance);
    let again = instance_from_json(&written).expect("re-read of written instance");
    assert_eq!(instance_to_json(&again), written);
    let corner = vec![instance.side() - 1; instance.dim()];
    assert_eq!(instance.weight(&corner).ok(), again.weight(&corner).ok());
});
