use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_weylscope");
const SCHEMA: &str = include_str!("../schema/report.schema.json");

fn weylscope(args: &[&str]) -> Output {
    Command::new(BIN).args(args).env_remove("WEYLSCOPE_BUDGET").output().expect("spawn weylscope")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 stdout")
}

fn assert_valid(json: &str) -> Value {
    let schema: Value = serde_json::from_str(SCHEMA).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let doc: Value = serde_json::from_str(json).expect("report is JSON");
    let errors: Vec<String> = validator.iter_errors(&doc).map(|e| format!("{} at {}", e, e.instance_path)).collect();
    assert!(errors.is_empty(), "schema violations: {errors:#?}");
    doc
}

#[test]
fn flat_torus_analysis_passes() {
    let o = weylscope(&["analyze", "t4_flat", "--grid", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("chart-sampled; not a global certificate"));
    assert!(text.contains("classification: anti-self-dual, S = 0"));
    assert!(text.contains("result:         pass"));
}

#[test]
fn failing_condition_exits_1() {
    let o = weylscope(&["analyze", "cp2_fubini_study", "--grid", "2", "--conditions", "asd"]);
    assert_eq!(o.status.code(), Some(1));
    let o = weylscope(&["analyze", "cp2_fubini_study", "--grid", "2", "--conditions", "kahler_spectrum"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["analyze", "t4_flat", "--no-such-flag"][..],
        &["analyze"],
        &["frobnicate"],
        &["analyze", "t4_flat", "--grid", "1"],
        &["analyze", "t4_flat", "--orientation", "2"],
        &["analyze", "t4_flat", "--conditions", "made_up"],
        &["analyze", "t4_flat", "--format", "yaml"],
        &["catalog", "no_such_entry"],
        &["analyze", "/nonexistent/file.metric"],
    ] {
        let o = weylscope(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?} should explain itself");
    }
}

#[test]
fn help_exits_0() {
    let o = weylscope(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verify"));
}

#[test]
fn malformed_metric_file_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.metric");
    std::fs::write(&path, "g11 = 1\ng22 = (1 + x1\ng33 = 1\ng44 = 1\n").unwrap();
    let o = weylscope(&["analyze", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.metric"));
}

#[test]
fn small_budget_is_rejected() {
    let o =
        Command::new(BIN).args(["analyze", "t4_flat", "--grid", "5"]).env("WEYLSCOPE_BUDGET", "100").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(BIN).args(["analyze", "t4_flat"]).env("WEYLSCOPE_BUDGET", "lots").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reruns_are_byte_identical() {
    let args = ["verify", "s4_round", "--grid", "2", "--format", "json", "--points"];
    let a = weylscope(&args);
    let b = weylscope(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn worker_count_does_not_change_output() {
    let base = ["analyze", "warped_probe", "--grid", "3", "--format", "json", "--points"];
    let one = weylscope(&[&base[..], &["--workers", "1"]].concat());
    let many = weylscope(&[&base[..], &["--workers", "5"]].concat());
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn json_reports_match_schema() {
    let a = weylscope(&["analyze", "ch2_complex_hyperbolic", "--grid", "2", "--format", "json", "--points"]);
    let doc = assert_valid(&stdout(&a));
    assert_eq!(doc["kind"], "analyze");
    assert_eq!(doc["classification"]["label"], "Kahler-spectrum");
    assert_eq!(doc["classification"]["scalar_sign"], "S < 0");
    assert_eq!(doc["points"].as_array().unwrap().len(), 16);

    let v = weylscope(&["verify", "warped_probe", "--grid", "2", "--format", "json"]);
    assert_eq!(v.status.code(), Some(0));
    let doc = assert_valid(&stdout(&v));
    assert_eq!(doc["summary"]["divergence_residual"]["verdict"], "fail");
    assert_eq!(doc["summary"]["divergence_residual"]["expected"], "fail");
    assert_eq!(doc["identities"].as_array().unwrap().len(), 4);

    let c = weylscope(&["catalog", "--format", "json"]);
    let doc = assert_valid(&stdout(&c));
    assert_eq!(doc["entries"].as_array().unwrap().len(), 7);

    let c = weylscope(&["catalog", "h4_hyperbolic", "--format", "json"]);
    let doc = assert_valid(&stdout(&c));
    assert_eq!(doc["entries"][0]["self_test"], "pass");
}

#[test]
fn schema_rejects_tampered_reports() {
    let a = weylscope(&["analyze", "t4_flat", "--grid", "2", "--format", "json"]);
    let mut doc: Value = serde_json::from_str(&stdout(&a)).unwrap();
    doc["verdict"] = Value::from("maybe");
    let schema: Value = serde_json::from_str(SCHEMA).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    assert!(!validator.is_valid(&doc));
}

#[test]
fn catalog_lists_every_entry() {
    let o = weylscope(&["catalog"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for name in
        ["t4_flat", "s4_round", "h4_hyperbolic", "cp2_fubini_study", "ch2_complex_hyperbolic", "s2xs2", "warped_probe"]
    {
        assert!(text.contains(name), "missing {name}");
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o =
        weylscope(&["analyze", "h4_hyperbolic", "--grid", "2", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "default conditions include half_pic, which fails for S < 0");
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    let doc = assert_valid(&written);
    assert_eq!(doc["metric"]["name"], "h4_hyperbolic");
}

#[test]
fn csv_has_one_row_per_point() {
    let o = weylscope(&["analyze", "s4_round", "--grid", "2", "--format", "csv"]);
    let text = stdout(&o);
    let mut rdr = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    let header = rdr.headers().unwrap().clone();
    assert_eq!(&header[0], "x1");
    assert!(header.iter().any(|h| h == "asd_norm"));
    let rows: Vec<_> = rdr.records().collect::<Result<_, _>>().unwrap();
    assert_eq!(rows.len(), 16);
    let s = header.iter().position(|h| h == "scalar").unwrap();
    for r in &rows {
        let v: f64 = r[s].parse().unwrap();
        assert!((v - 12.0).abs() < 1e-8);
    }
}

#[test]
fn metric_file_target() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("conformal_flat.metric");
    std::fs::write(
        &path,
        "domain = [0,1]x[0,1]x[0,1]x[0,1]\n\
         g11 = exp(2*x1); g22 = exp(2*x1); g33 = exp(2*x1); g44 = exp(2*x1)\n",
    )
    .unwrap();
    let o = weylscope(&["analyze", path.to_str().unwrap(), "--grid", "2", "--conditions", "asd", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let doc = assert_valid(&stdout(&o));
    assert_eq!(doc["metric"]["name"], "conformal_flat");
    assert_eq!(doc["metric"]["origin"], "file");
    assert!(Path::new(&path).exists());
}
