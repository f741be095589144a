use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tvar-bias"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn tvar-bias")
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_owned()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn estimate_small_sample() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "x.csv", "1\n2\n3\n4\n5\n");
    let out = run(&["estimate", &path, "--p", "0.5"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert!((v["tvar"].as_f64().unwrap() - 4.2).abs() < 1e-12);
    assert!((v["tce"].as_f64().unwrap() - 4.0).abs() < 1e-12);
    assert_eq!(v["n"], 5);
}

#[test]
fn estimate_csv_named_column() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "x.csv", "id,loss\na,1\nb,2\nc,3\nd,4\n");
    let out = run(&["estimate", &path, "--p", "0.5", "--column", "loss", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("n,p,tvar,tce,quantile"));
    assert!(text.contains("4,0.5,3.5,3.5,2"), "{text}");
}

#[test]
fn empty_file_names_the_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "empty.csv", "");
    let out = run(&["estimate", &path, "--p", "0.9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("empty.csv"));
}

#[test]
fn bad_value_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "bad.csv", "1\n2\nthree\n4\n");
    let out = run(&["estimate", &path, "--p", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains('3'));
}

#[test]
fn probability_out_of_range() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "x.csv", "1\n2\n3\n");
    for p in ["1.5", "0", "1", "-0.2"] {
        let out = run(&["estimate", &path, "--p", p]);
        assert_eq!(out.status.code(), Some(2), "p = {p}");
    }
}

#[test]
fn constant_column_hits_density_floor() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "c.csv", &"7\n".repeat(50));
    let out = run(&["bias", &path, "--p", "0.9"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).to_lowercase();
    assert!(err.contains("density"), "{err}");
}

#[test]
fn bootstrap_block_is_seeded() {
    let dir = tempfile::tempdir().unwrap();
    let body: String = (1..=200).map(|i| format!("{}\n", 1.0 + (i as f64 * 0.37).sin().abs() * i as f64 / 20.0)).collect();
    let path = write(dir.path(), "x.csv", &body);
    let args = ["bias", &path, "--p", "0.9", "--bootstrap", "200", "--seed", "11"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(json(&a)["bootstrap"], json(&b)["bootstrap"]);
    assert_eq!(json(&a)["bootstrap"]["seed"], 11);
    assert!(json(&a)["leading_term"].as_f64().unwrap() < 0.0);
}

#[test]
fn bootstrap_without_seed_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "x.csv", "1\n2\n3\n4\n5\n6\n");
    let out = run(&["bias", &path, "--p", "0.5", "--bootstrap", "10"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn simulate_fig4_has_fifteen_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["simulate", "--figure", "fig4", "--seed", "5", "--replications", "5"])
        .env("TVAR_BIAS_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("fig4.csv")).unwrap();
    assert_eq!(csv.lines().count(), 16);
    let meta: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("fig4.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["seed"], 5);
}

#[test]
fn simulate_rejects_unknown_figure_and_missing_seed() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().to_str().unwrap();
    let out = run(&["simulate", "--figure", "fig9", "--seed", "1", "--out", out_dir]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["simulate", "--figure", "fig1", "--out", out_dir]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["simulate", "--figure", "fig6", "--seed", "1", "--out", out_dir]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn simulate_from_spec_file() {
    let dir = tempfile::tempdir().unwrap();
    let spec = serde_json::json!({
        "figure": "fig2",
        "alpha_grid": [4.0],
        "p_grid": [0.9, 0.95],
        "n_grid": [200],
        "replications": 4,
        "seed": 3
    });
    let spec_path = write(dir.path(), "spec.json", &spec.to_string());
    let out = run(&["simulate", "--spec", &spec_path, "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("fig2.csv")).unwrap();
    assert_eq!(csv.lines().count(), 3);
}

#[test]
fn analyze_writes_dataset_tables() {
    let dir = tempfile::tempdir().unwrap();
    let body: String = (1..=300).map(|i| format!("{}\n", 1.0 / (1.0 - i as f64 / 301.0).powf(1.0 / 3.0))).collect();
    let path = write(dir.path(), "x.csv", &body);
    let out = run(&[
        "analyze", &path, "--p", "0.9,0.95", "--curve-p", "0.95", "--curve-n", "100,200",
        "--bootstrap", "50", "--repetitions", "5", "--seed", "9", "--out", dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(dir.path().join("dataset.csv").exists());
    assert!(dir.path().join("dataset.meta.json").exists());
}

#[test]
fn help_exits_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&[]).status.code(), Some(2));
}
