use std::process::{Command, Output};

use gpascal::fractal::fractal_matrix;
use gpascal::io::MatrixDocument;
use gpascal::special::phi_q_matrix;
use gpascal::ExactRational;

fn gpascal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gpascal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn eval_fractal_entry() {
    let out = gpascal(&["eval", "--kind", "fractal", "--q", "2", "10", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "8\n");
    let out = gpascal(&["eval", "--kind", "fractal", "--q", "2", "--phi", "1/2", "10", "3"]);
    assert_eq!(stdout(&out), "1/8\n");
    let out = gpascal(&["eval", "--kind", "pascal", "6", "2"]);
    assert_eq!(stdout(&out), "15\n");
}

#[test]
fn gen_json_matches_library() {
    let out = gpascal(&["gen", "--kind", "phiq", "--q", "3", "--phi", "-2/5", "--size", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = MatrixDocument::from_json(&stdout(&out)).unwrap();
    assert_eq!(doc.kind, "phiq");
    assert_eq!(doc.q, Some(3));
    let phi: ExactRational = "-2/5".parse().unwrap();
    assert_eq!(doc.phi.as_ref(), Some(&phi));
    assert_eq!(doc.to_matrix().unwrap(), phi_q_matrix(&phi, 3, 10));
}

#[test]
fn gen_csv() {
    let out = gpascal(&["gen", "--size", "4", "--format", "csv"]);
    assert_eq!(stdout(&out), "1\n1,1\n1,2,1\n1,3,3,1\n");
}

#[test]
fn export_pbm_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.pbm");
    let out = gpascal(&[
        "export", "--kind", "fractal", "--q", "2", "--phi", "0", "--size", "64", "--format", "pbm",
        "--output", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, include_str!("golden/sierpinski2_64.pbm"));
}

#[test]
fn decompose_from_json_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    let m = fractal_matrix(&ExactRational::from(2), 2, 9);
    std::fs::write(&path, MatrixDocument::new("fractal", Some(2), None, &m).to_json()).unwrap();
    let out = gpascal(&["decompose", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let coords: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let expected = serde_json::json!({
        "2": "2", "3": "1", "4": "2", "5": "1", "6": "1", "7": "1", "8": "2"
    });
    assert_eq!(coords, expected);
}

#[test]
fn decompose_pascal() {
    let out = gpascal(&["decompose", "--size", "7"]);
    let coords: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(coords, serde_json::json!({"2":"2","3":"3","4":"2","5":"5","6":"1"}));
}

#[test]
fn verify_reports() {
    let out = gpascal(&["verify", "--suite", "primes", "--size", "16"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["suite"], "primes");
    assert_eq!(report["pass"], true);
    assert!(report["counterexample"].is_null());
}

#[test]
fn convolve_ones() {
    let out = gpascal(&["convolve", "--q", "2", "--a", "1,1", "--b", "1,1", "--degree", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let cells: Vec<String> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(cells, ["1", "2", "2", "4"]);
}

#[test]
fn bad_input_exits_two() {
    for args in [
        &["gen", "--kind", "fractal", "--q", "1"][..],
        &["verify", "--suite", "nope"],
        &["gen", "--kind", "phiq", "--q", "2"],
        &["gen", "--size", "0"],
        &["convolve", "--q", "2", "--a", "1,1,1", "--b", "1,1"],
        &["decompose", "--input", "/nonexistent/m.json"],
    ] {
        assert_eq!(gpascal(args).status.code(), Some(2), "{args:?}");
    }
    assert_eq!(gpascal(&["--help"]).status.code(), Some(0));
}
