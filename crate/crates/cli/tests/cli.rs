use std::path::PathBuf;
use std::process::{Command, Output};

fn ffg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ffg"))
        .args(args)
        .env_remove("FFG_SIZE_CAPS")
        .output()
        .expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ffg-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn enumerate_prints_counts() {
    let o = ffg(&["enumerate", "--kind", "poset", "--max-n", "5"]);
    assert!(o.status.success());
    let out = stdout(&o);
    for line in ["n=3 count=5", "n=4 count=16", "n=5 count=63"] {
        assert!(out.contains(line), "{out}");
    }
}

#[test]
fn kernel_suite_passes_and_writes_report() {
    let dir = scratch("kernel");
    let report = dir.join("report.json");
    let o = ffg(&[
        "suite",
        "--name",
        "kernel",
        "--max-poset",
        "3",
        "--seed",
        "7",
        "--json",
        report.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = std::fs::read_to_string(&report).unwrap();
    assert!(text.contains("\"passed\": true"));
}

#[test]
fn mutation_fails_with_replayable_witness() {
    let dir = scratch("mutation");
    let o = ffg(&[
        "suite",
        "--name",
        "kernel",
        "--max-poset",
        "2",
        "--mutate",
        "kernel",
        "--witness-dir",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let witness = dir.join("kernel-inclusion.json");
    assert!(witness.exists());
    let r = ffg(&["replay", "--witness", witness.to_str().unwrap()]);
    assert_eq!(r.status.code(), Some(1));
    assert!(stdout(&r).contains("failure reproduced"));
}

#[test]
fn search_finds_kite() {
    let o = ffg(&["search", "--property", "not-ultraparacompact-frame", "--max-poset", "4"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("5 elements"));
}

#[test]
fn export_dot_and_json() {
    let dir = scratch("export");
    let obj = dir.join("c3.json");
    std::fs::write(&obj, r#"{"poset": {"n": 2, "le": [[true, true], [false, true]]}}"#).unwrap();
    let dot = ffg(&["export", "--in", obj.to_str().unwrap(), "--format", "dot"]);
    assert!(dot.status.success());
    assert!(stdout(&dot).starts_with("digraph frame"));
    let json = ffg(&["export", "--in", obj.to_str().unwrap(), "--format", "json"]);
    let again = dir.join("again.json");
    std::fs::write(&again, &json.stdout).unwrap();
    let json2 = ffg(&["export", "--in", again.to_str().unwrap()]);
    assert_eq!(json.stdout, json2.stdout);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(ffg(&["suite", "--name", "nope"]).status.code(), Some(2));
    assert_eq!(ffg(&["export", "--in", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(ffg(&["search", "--property", "whatever"]).status.code(), Some(2));
    let bad = Command::new(env!("CARGO_BIN_EXE_ffg"))
        .args(["enumerate", "--max-n", "1"])
        .env("FFG_SIZE_CAPS", "frame=lots")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
