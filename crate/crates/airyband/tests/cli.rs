use std::process::{Command, Output};

use serde_json::Value;

fn airyband(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_airyband")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn convert_reports_c() {
    let out = airyband(&["convert", "--h", "0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!((v["c"].as_f64().unwrap() - 0.5f64.powf(-2.0 / 3.0)).abs() < 1e-13);
}

#[test]
fn bands_json_matches_library() {
    use airyband::bands::{solve_band_structure, ScaleParams};
    let out = airyband(&["bands", "--c", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["bands_in_range"], 2);
    let s = solve_band_structure(ScaleParams::from_c(3.0).unwrap(), 1).unwrap();
    for (b, want) in v["bands"].as_array().unwrap().iter().zip(&s.bands) {
        let got = b["Emin"].as_f64().unwrap();
        assert!(((got - want.e_min) / want.e_min).abs() < 1e-14);
    }
}

#[test]
fn zeros_csv_has_header_and_rows() {
    let out = airyband(&["zeros", "--max-index", "3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("p,c_p,c_tilde_p,xi_p,xi_tilde_p"));
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first[1], "1.51490605029665");
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn ratio_export_leaves_poles_empty() {
    let out = airyband(&["zeros", "--ratios", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("0,") && l.ends_with(",")));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(airyband(&["bands", "--c", "3", "--h", "0.5"]).status.code(), Some(2));
    assert_eq!(airyband(&["bands"]).status.code(), Some(2));
    assert_eq!(airyband(&["zeros", "--tol", "1e-3"]).status.code(), Some(2));
    assert_eq!(airyband(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn computation_errors_exit_one_with_json() {
    let out = airyband(&["convert", "--c=-1"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(v["error"], "domain");
    let out = airyband(&["density", "--c", "0.5"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_subset_passes() {
    let out = airyband(&["verify", "--claims", "zero-ordering"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v.to_string().contains("zero-ordering"));
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("airyband-cli-{}.json", std::process::id()));
    let out = airyband(&["density", "--c", "10", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["k0"], 12);
    std::fs::remove_file(path).unwrap();
}
