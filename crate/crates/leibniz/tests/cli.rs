use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leibniz-check")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("leibniz-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn verify_passing_entry_exits_zero() {
    let o = run(&["verify", "--entry", "A_17", "--samples", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("A_17(alpha="));
}

#[test]
fn verify_failing_entry_exits_one() {
    let o = run(&["--json", "verify", "--entry", "A_242:alpha=1"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["exit_status"], 1);
    assert_eq!(v["commands"][0]["rows"][0]["status"], "fail");
}

#[test]
fn corrupted_catalogue_is_an_error() {
    let path = scratch("bad.json", r#"{"format": 1, "dimension": 5, "entries": [{"name": "X"#);
    let o = run(&["verify", "--catalogue", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn unknown_entry_is_an_error() {
    let o = run(&["invariants", "--entry", "A_999"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn canon_reports_kind_and_q() {
    let o = run(&["--json", "canon", "[[0,2],[4,0]]"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let data = &v["commands"][0]["rows"][0]["data"];
    assert_eq!(data["kind"], "(v)");
    assert_eq!(data["verified"], true);
    assert_eq!(run(&["canon", "[[1,2]]"]).status.code(), Some(2));
}

#[test]
fn bundled_fixtures_verify() {
    let o = run(&["iso", "verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("l7-ii-to-iv"));
}

#[test]
fn a_fixture_with_a_wrong_map_fails() {
    let text = r#"{"format": 1, "fixtures": [{"name": "swap", "note": "", "source": {"entry": "A_1"},
        "target": {"entry": "A_1"}, "columns": [{"2": "1"}, {"1": "1"}, {"3": "1"}, {"4": "1"}, {"5": "1"}], "expect": "ok"}]}"#;
    let path = scratch("fixtures.json", text);
    let o = run(&["iso", "verify", "--fixtures", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
}

#[test]
fn out_writes_the_report() {
    let path = std::env::temp_dir().join(format!("leibniz-cli-{}-out.json", std::process::id()));
    let o = run(&["--json", "--out", path.to_str().unwrap(), "invariants", "--entry", "A_1"]);
    assert_eq!(o.status.code(), Some(0));
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(written, stdout(&o));
}
