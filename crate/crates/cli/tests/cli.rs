use std::process::{Command, Output};

fn heisloc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heisloc")).args(args).output().expect("spawn heisloc")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn zero_p_max_is_a_usage_error() {
    let o = heisloc(&["verify", "localization", "--p-max", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("pMax"));
}

#[test]
fn unknown_format_and_subset_are_usage_errors() {
    assert_eq!(heisloc(&["verify", "nesting", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(heisloc(&["verify", "everything"]).status.code(), Some(2));
    assert_eq!(heisloc(&["verify", "constants", "--c", "zz"]).status.code(), Some(2));
}

#[test]
fn negative_real_c_is_degenerate_not_failed() {
    let o = heisloc(&["verify", "constants", "--c=-1", "--c", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 2);
    assert_eq!(arr[0]["status"], "degenerate");
    assert_eq!(arr[1]["status"], "pass");
    assert_eq!(arr[1]["metrics"]["constant"], 1.0);
}

#[test]
fn seed_is_echoed_and_json_is_reproducible() {
    let args = ["verify", "algebra", "--seed", "7", "--instances", "20"];
    let a = heisloc(&args);
    let b = heisloc(&args);
    assert_eq!(a.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&a.stderr).contains("seed: 7"));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "pMax = 1\ncList = [\"i\"]\ncouldBeTypo = 3\n").unwrap();
    let bad = heisloc(&["verify", "constants", "--config", cfg.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(2));

    std::fs::write(&cfg, "pMax = 1\ncList = [\"i\", \"2\"]\n").unwrap();
    let from_file = heisloc(&["verify", "constants", "--config", cfg.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&from_file)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);

    let overridden = heisloc(&["verify", "constants", "--config", cfg.to_str().unwrap(), "--c", "3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&overridden)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 1);
    assert_eq!(v[0]["params"]["re"], 3.0);
}

#[test]
fn markdown_has_convention_matrix() {
    let o = heisloc(&["verify", "localization", "--p-max", "2", "--format", "markdown"]);
    let text = stdout(&o);
    assert!(text.starts_with("# Verification summary"));
    let matrix = text.split("## Convention matrix").nth(1).expect("matrix section");
    let rows = matrix.lines().filter(|l| l.starts_with("| sigma=")).count();
    assert_eq!(rows, 4, "{text}");
}

#[test]
fn writes_report_and_csv_tables() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = heisloc(&[
        "verify",
        "all",
        "--p-max",
        "1",
        "--cutoff-n-max",
        "2",
        "--instances",
        "10",
        "--out",
        out.to_str().unwrap(),
        "--csv",
        dir.path().to_str().unwrap(),
    ]);
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(v.as_array().unwrap().iter().any(|r| r["checkId"] == "cutoff.bounds"));

    let mut sups = csv::Reader::from_path(dir.path().join("cutoff_sups.csv")).unwrap();
    let rows: Vec<csv::StringRecord> = sups.records().map(Result::unwrap).collect();
    // N = 1 gives k = 0..=2, N = 2 gives k = 0..=5.
    assert_eq!(rows.len(), 3 + 6);
    for r in &rows {
        let sup: f64 = r[2].parse().unwrap();
        let ceiling: f64 = r[3].parse().unwrap();
        assert!(sup <= ceiling, "{r:?}");
    }
    let growth = std::fs::read_to_string(dir.path().join("growth_rates.csv")).unwrap();
    assert!(growth.starts_with("p,minimal_c,rate\n1,"));
}
