use std::fs;
use std::path::Path;

use autoseq::cli::run;

fn autoseq(args: &[&str]) -> i32 {
    let argv = std::iter::once("autoseq").chain(args.iter().copied());
    run(argv).expect("command runs")
}

fn json(dir: &Path, name: &str) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(dir.join(format!("{name}.json"))).unwrap()).unwrap()
}

#[test]
fn transduce_writes_the_induced_transducer() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert_eq!(autoseq(&["transduce", "five-state", "--out", out]), 0);
    let report = json(dir.path(), "transduce");
    assert_eq!(report["passed"], true);
    assert_eq!(report["reconstruction"]["mismatches"].as_array().unwrap().len(), 0);
}

#[test]
fn structure_of_the_six_state_example() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert_eq!(autoseq(&["structure", "six-state", "--depth", "8", "--out", out]), 0);
    let report = json(dir.path(), "structure");
    assert_eq!(report["report"]["d"], 2);
    assert_eq!(report["report"]["k0"], 1);
}

#[test]
fn predict_and_verify_on_rudin_shapiro() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert_eq!(autoseq(&["predict", "rudin-shapiro", "--out", out]), 0);
    let pred = json(dir.path(), "predict");
    assert!((pred["frequencies"]["+1"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert_eq!(autoseq(&["verify", "rudin-shapiro", "--limit", "1000000", "--tol", "0.05", "--out", out]), 0);
    // a tolerance no finite count can meet
    assert_eq!(autoseq(&["verify", "rudin-shapiro", "--limit", "100000", "--tol", "0"]), 1);
}

#[test]
fn fourier_and_carry_write_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert_eq!(autoseq(&["fourier", "thue-morse", "--rep", "char", "--lambda", "8..12", "--grid", "256", "--out", out]), 0);
    let csv = fs::read_to_string(dir.path().join("fourier.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 5);
    assert_eq!(autoseq(&["carry", "rudin-shapiro", "--lambda", "6", "--alpha", "1", "--out", out]), 0);
    let csv = fs::read_to_string(dir.path().join("carry.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 6);
}

#[test]
fn mobius_and_kloosterman() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert_eq!(autoseq(&["mobius", "thue-morse", "--limit", "100000", "--shifts", "0,3", "--out", out]), 0);
    assert_eq!(json(dir.path(), "mobius").as_array().unwrap().len(), 2);
    assert_eq!(autoseq(&["kloosterman", "--a", "1", "--c", "30", "--out", out]), 0);
    let k = json(dir.path(), "kloosterman");
    assert!((k["re"].as_f64().unwrap() + 1.0).abs() < 1e-10);
}

#[test]
fn component_selection_and_reduction() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert_eq!(autoseq(&["transduce", "base3-intro", "--component", "b", "--out", out]), 0);
    assert_eq!(autoseq(&["reduce", "six-state", "--out", out]), 0);
    let red = json(dir.path(), "reduce");
    assert_eq!(red["power"], 2);
}

#[test]
fn errors_surface_as_errors() {
    let argv = ["autoseq", "transduce", "base3-intro"];
    assert!(run(argv).is_err());
    let argv = ["autoseq", "inspect", "no-such-automaton"];
    assert!(run(argv).is_err());
}
