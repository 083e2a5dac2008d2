use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn axial(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_axial"))
        .args(args)
        .output()
        .expect("spawn axial")
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON value")
}

#[test]
fn help_lists_every_flag() {
    let expected: &[(&str, &[&str])] = &[
        (
            "simulate",
            &[
                "--config", "--model", "--d", "--n", "--m", "--alpha", "--algo", "--trials", "--seed", "--emit", "--out",
                "--threads", "--no-lower-bound", "--no-timing",
            ],
        ),
        ("exact", &["--input", "--method"]),
        ("constants", &["--d"]),
        ("fit", &["--in", "--x", "--y", "--min-x"]),
        ("gg-compare", &["--d", "--n", "--samples", "--seed", "--threads", "--out"]),
        ("small-m", &["--n", "--alpha", "--seed"]),
    ];
    for (sub, flags) in expected {
        let out = axial(&[sub, "--help"]);
        assert_eq!(out.status.code(), Some(0), "{sub}");
        let text = String::from_utf8_lossy(&out.stdout);
        for flag in *flags {
            assert!(text.contains(flag), "{sub} --help lacks {flag}");
        }
    }
    assert_eq!(axial(&["--help"]).status.code(), Some(0));
}

#[test]
fn constants_prints_c3() {
    let v = json(&axial(&["constants", "--d", "3"]));
    assert!((v["c_d"].as_f64().unwrap() - 1.622651).abs() < 1e-5);
    assert!(v["quadrature_residual"].as_f64().unwrap() < 1e-8);
}

#[test]
fn exact_solves_fixture() {
    let path = fixture("f2.json");
    for method in ["hybrid", "brute"] {
        let v = json(&axial(&["exact", "--input", path.to_str().unwrap(), "--method", method]));
        assert!((v["value"].as_f64().unwrap() - 0.8).abs() < 1e-15);
        assert_eq!(v["argmin"], serde_json::json!([[1, 2], [1, 2]]));
        assert_eq!(v["method"], method);
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    let out = out.to_str().unwrap();
    let base = ["simulate", "--model", "factorized", "--d", "3", "--n", "4", "--algo", "row-greedy"];
    let run = |extra: &[&str]| axial(&[&base[..], extra].concat());
    assert_eq!(run(&["--trials", "0", "--seed", "1", "--out", out]).status.code(), Some(2));
    assert_eq!(run(&["--trials", "1", "--out", out]).status.code(), Some(2));
    assert_eq!(run(&["--trials", "1", "--seed", "1"]).status.code(), Some(2));

    let unknown = run(&["--bogus"]);
    assert_eq!(unknown.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("Usage"));

    let big = axial(&["simulate", "--model", "exp1", "--d", "3", "--n", "1000", "--trials", "1", "--seed", "1", "--out", out]);
    assert_eq!(big.status.code(), Some(3));

    assert_eq!(axial(&["exact", "--input", "/nonexistent/f.json"]).status.code(), Some(4));
    let unwritable = run(&["--trials", "1", "--seed", "1", "--out", "/nonexistent/dir/x.csv"]);
    assert_eq!(unwritable.status.code(), Some(4));
    assert_eq!(axial(&["small-m", "--n", "100", "--alpha", "1.5", "--seed", "1"]).status.code(), Some(2));
}

#[test]
fn config_file_and_flags_merge() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    let out = dir.path().join("out.csv");
    std::fs::write(
        &cfg,
        format!(
            r#"{{"model":"uniform-int","alpha":0.5,"d":3,"n_values":[5,7],"trials":2,"master_seed":4,"timing":false,"out_path":{}}}"#,
            serde_json::to_string(&out).unwrap()
        ),
    )
    .unwrap();
    let v = json(&axial(&["simulate", "--config", cfg.to_str().unwrap(), "--trials", "3", "--m", "full"]));
    assert_eq!(v["records"], 6);
    let mut reader = csv::Reader::from_path(&out).unwrap();
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| &r[0] == "uniform-int" && r[10].is_empty()));
    assert_eq!(&rows[5][3], "7");

    std::fs::write(&cfg, r#"{"model":"exp1","surprise":1}"#).unwrap();
    assert_eq!(axial(&["simulate", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn fit_reads_columns() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("law.csv");
    let mut text = String::from("x,y,label\n");
    for x in [1.0f64, 4.0, 9.0, 16.0, 25.0] {
        text.push_str(&format!("{x},{},a\n{x},{},b\n", 2.0 * x.sqrt(), 2.0 * x.sqrt()));
    }
    std::fs::write(&path, text).unwrap();
    let p = path.to_str().unwrap();
    let v = json(&axial(&["fit", "--in", p, "--x", "x", "--y", "y"]));
    assert!((v["exponent"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert_eq!(v["points"], 5);
    let v = json(&axial(&["fit", "--in", p, "--x", "x", "--y", "y", "--min-x", "5"]));
    assert_eq!(v["points"], 3);

    let missing = axial(&["fit", "--in", p, "--x", "x", "--y", "nope"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("nope"));
    assert_eq!(axial(&["fit", "--in", p, "--x", "x", "--y", "label"]).status.code(), Some(2));

    let empty = dir.path().join("empty.csv");
    std::fs::write(&empty, "x,y\n").unwrap();
    assert_ne!(axial(&["fit", "--in", empty.to_str().unwrap(), "--x", "x", "--y", "y"]).status.code(), Some(0));
    std::fs::write(&empty, "").unwrap();
    assert_ne!(axial(&["fit", "--in", empty.to_str().unwrap(), "--x", "x", "--y", "y"]).status.code(), Some(0));
}

#[test]
fn experiments_print_json() {
    let dir = tempfile::tempdir().unwrap();
    let samples = dir.path().join("gg.csv");
    let v = json(&axial(&[
        "gg-compare", "--d", "3", "--n", "6", "--samples", "40", "--seed", "2", "--out", samples.to_str().unwrap(),
    ]));
    assert_eq!(v["samples"], 40);
    assert!((v["analytic_mean"].as_f64().unwrap() - 1.4913888888888889).abs() < 1e-12);
    let text = std::fs::read_to_string(&samples).unwrap();
    assert!(text.starts_with("sample,row_greedy,global_greedy\n"));
    assert_eq!(text.lines().count(), 41);

    let a = json(&axial(&["small-m", "--n", "500", "--alpha", "0.5", "--seed", "3"]));
    let b = json(&axial(&["small-m", "--n", "500", "--alpha", "0.5", "--seed", "3"]));
    assert_eq!(a, b);
    assert_eq!(a["M"], 22);
    assert!(a["greedy_total"].as_f64().unwrap() >= 500.0);
}

#[test]
fn per_step_output_is_selected_by_emit() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("steps.csv");
    json(&axial(&[
        "simulate", "--model", "exp1", "--d", "3", "--n", "5", "--m", "3", "--trials", "2", "--seed", "8", "--emit",
        "per-step", "--out", out.to_str().unwrap(),
    ]));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("model,d,n,algo,trial,step,remaining,step_weight\n"));
    assert_eq!(text.lines().count(), 7);
}
