//! Replays the checked-in fuzz corpus through the same parser entry points
//! as the fuzz targets, so the seeds stay valid under plain `cargo test`.

use std::path::PathBuf;

use axial_lab::harness::{column_means, read_step_csv, read_trial_csv};
use axial_lab::io::{instance_from_json, instance_to_json};
use axial_lab::{Algo, ConfigPatch, CostModel, Emit, ExactMethod, MRule};

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(String, Vec<u8>)> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            (path.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

fn text(bytes: &[u8]) -> &str {
    std::str::from_utf8(bytes).unwrap()
}

#[test]
fn instance_seeds() {
    for (name, data) in seeds("instance_json") {
        let parsed = instance_from_json(text(&data));
        assert_eq!(parsed.is_ok(), !name.starts_with("bad_"), "{name}");
        if let Ok(inst) = parsed {
            let written = instance_to_json(&inst);
            assert_eq!(instance_to_json(&instance_from_json(&written).unwrap()), written, "{name}");
        }
    }
}

#[test]
fn config_seeds() {
    for (name, data) in seeds("config_json") {
        ConfigPatch::from_json_str(text(&data))
            .and_then(ConfigPatch::resolve)
            .unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn csv_seeds() {
    for (name, data) in seeds("trial_csv") {
        assert!(!read_trial_csv(data.as_slice()).unwrap().is_empty(), "{name}");
    }
    for (name, data) in seeds("step_csv") {
        assert!(!read_step_csv(data.as_slice()).unwrap().is_empty(), "{name}");
    }
    for (name, data) in seeds("column_means") {
        let points = column_means(data.as_slice(), "n", "total", None);
        assert_eq!(points.is_ok(), name != "header_only.csv", "{name}");
    }
}

#[test]
fn flag_seeds() {
    for (name, data) in seeds("flag_values") {
        let s = text(&data);
        let accepted = [
            s.parse::<Algo>().is_ok(),
            s.parse::<CostModel>().is_ok(),
            s.parse::<Emit>().is_ok(),
            s.parse::<ExactMethod>().is_ok(),
            s.parse::<MRule>().is_ok(),
        ];
        assert_eq!(accepted.iter().filter(|&&a| a).count(), 1, "{name}");
    }
}
