use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lcdcodes"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn ledger() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../ledger/tables.jsonl")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn analyze_prints_parameters_and_class() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "c.gen1", "6 2\n111000\n000111\n");
    let o = run(&["analyze", &f]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "6 2 3 hull=0 LCD_oe");
    let f = write(dir.path(), "r.gen1", "2 1\n11\n");
    assert_eq!(stdout(&run(&["analyze", &f])).trim(), "2 1 2 hull=1 NotLCD");
}

#[test]
fn malformed_input_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.gen1", "4 2\n1100\n00x1\n");
    let o = run(&["analyze", &f]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error"));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(3));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn certify_writes_trace_and_output() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "c.gen1", "6 2\n111000\n000111\n");
    let o = run(&["certify", &f]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("[6,2,3] -> [5,2,"));
    let step = dir.path().join("c.step.gen1");
    assert_eq!(stdout(&run(&["analyze", step.to_str().unwrap()])).split_whitespace().take(2).collect::<Vec<_>>(), ["5", "2"]);
    let trace = fs::read_to_string(dir.path().join("c.cert.jsonl")).unwrap();
    for line in trace.lines() {
        serde_json::from_str::<serde_json::Value>(line).unwrap();
    }
}

#[test]
fn search_writes_a_code_or_reports_none() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.gen1");
    let o = run(&["search", "9", "3", "4", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let a = stdout(&run(&["analyze", out.to_str().unwrap()]));
    let fields: Vec<&str> = a.split_whitespace().collect();
    assert_eq!(&fields[..2], ["9", "3"]);
    assert!(fields[2].parse::<usize>().unwrap() >= 4);
    assert_eq!(fields[3], "hull=0");
    let o = run(&["search", "6", "2", "5", "--iterations", "50"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "none");
}

#[test]
fn dlcd_table_prints_rows_and_rejects_large_n() {
    let o = run(&["dlcd-table", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l == "6 2 3"));
    assert_eq!(text.lines().count(), 21);
    let o = run(&["dlcd-table", "4", "--json"]);
    serde_json::from_str::<serde_json::Value>(&stdout(&o)).unwrap();
    assert_ne!(run(&["dlcd-table", "13"]).status.code(), Some(0));
}

#[test]
fn verify_ledger_passes_builtin_rows() {
    let o = run(&["verify-ledger", ledger().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("A1-01 expand_code PASS [6,2,3]"));
    assert!(text.contains("SKIPPED-MISSING-SEED"));
    assert!(!text.contains(" FAIL "));
    assert!(text.contains("0 violations"));
}

#[test]
fn construct_is_deterministic() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for dir in [&a, &b] {
        let o = run(&["construct", ledger().to_str().unwrap(), "--id", "A2-02", "--id", "A4-06", "--out-dir", dir.path().to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    let mut names: Vec<_> = fs::read_dir(a.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert!(!names.is_empty());
    for name in names {
        assert_eq!(fs::read(a.path().join(&name)).unwrap(), fs::read(b.path().join(&name)).unwrap());
    }
}

#[test]
fn ledger_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let skipped = write(
        dir.path(),
        "skip.jsonl",
        r#"{"id":"x","op":"extend_even","inputs":{"code":"external:absent"},"expect":[7,2,4],"status":"external"}"#,
    );
    assert_eq!(run(&["construct", &skipped]).status.code(), Some(2));
    let failing = write(
        dir.path(),
        "fail.jsonl",
        r#"{"id":"y","op":"extend_even","inputs":{"code":"inline:111000,000111"},"expect":[7,2,5],"status":"builtin"}"#,
    );
    let o = run(&["construct", &failing]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("y extend_even FAIL"));
    let broken = write(dir.path(), "broken.jsonl", "{not json}\n");
    assert_eq!(run(&["construct", &broken]).status.code(), Some(3));
}
