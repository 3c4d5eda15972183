use std::path::Path;
use std::process::{Command, Output};

use sdg_core::bench::{CSV_HEADER, SWEEP_HEADER};

fn stokes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stokes-sdg")).args(args).output().unwrap()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_owned()
}

#[test]
fn run_writes_csv_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = path(dir.path(), "taylor.csv");
    let res = stokes(&["run", "--case", "taylor", "--mesh", "tri", "--levels", "2", "--start", "2", "--out", &out]);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], CSV_HEADER);
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("2,") && lines[1].ends_with(",,,,"));
    assert_eq!(lines[2].split(',').count(), CSV_HEADER.split(',').count());
}

#[test]
fn run_writes_markdown() {
    let dir = tempfile::tempdir().unwrap();
    let out = path(dir.path(), "t.md");
    let res = stokes(&[
        "run", "--case", "trig", "--mesh", "poly", "--method", "sdg2", "--nu", "1e-3", "--levels", "2", "--out", &out,
        "--format", "md",
    ]);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with('|') && text.contains("N/A"));
}

#[test]
fn sweep_lists_both_methods() {
    let dir = tempfile::tempdir().unwrap();
    let out = path(dir.path(), "sweep.csv");
    let res = stokes(&["sweep", "--case", "taylor", "--mesh", "tri", "--level", "2", "--nu-list", "1,1e-2", "--out", &out]);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], SWEEP_HEADER);
    assert_eq!(lines.len(), 5);
    assert!(lines[1].contains("sdg1") && lines[4].contains("sdg2"));
}

#[test]
fn generated_mesh_can_be_solved_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let mesh = path(dir.path(), "hex.jsonl");
    let out = path(dir.path(), "hex.csv");
    assert!(stokes(&["mesh", "--family", "poly", "--n", "3", "--out", &mesh]).status.success());
    let arg = format!("file:{mesh}");
    let res = stokes(&["run", "--case", "noflow", "--mesh", &arg, "--out", &out]);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 2);
}

#[test]
fn usage_errors_exit_with_2() {
    assert_eq!(stokes(&["run", "--case", "taylor"]).status.code(), Some(2));
    assert_eq!(stokes(&["run", "--case", "nope", "--mesh", "tri", "--out", "x"]).status.code(), Some(2));
    assert_eq!(stokes(&["sweep", "--case", "taylor", "--mesh", "hex", "--out", "x"]).status.code(), Some(2));
}

#[test]
fn runtime_errors_exit_with_1() {
    let dir = tempfile::tempdir().unwrap();
    let out = path(dir.path(), "x.csv");
    let missing = format!("file:{}", path(dir.path(), "missing.jsonl"));
    let res = stokes(&["run", "--case", "taylor", "--mesh", &missing, "--out", &out]);
    assert_eq!(res.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&res.stderr).starts_with("error:"));
    let res = stokes(&["run", "--case", "taylor", "--mesh", "trap", "--jitter", "0.1", "--out", &out]);
    assert_eq!(res.status.code(), Some(1));
}
