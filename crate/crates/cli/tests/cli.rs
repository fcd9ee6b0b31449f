use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbimirror"))
        .args(args)
        .env_remove("ORBIMIRROR_MAX_MU")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(args: &[&str]) -> (String, Value) {
    let out = run(args);
    assert_eq!(code(&out), 0, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let value = serde_json::from_str(&text).expect("valid JSON");
    (text, value)
}

#[test]
fn worked_example_cup_table_markdown() {
    let out = run(&["cup-table", "--weights", "1,2,2,3,3,3", "--format", "md"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let header = text.lines().find(|l| l.starts_with("| |")).expect("grid header");
    let labels: Vec<&str> = header.trim_matches('|').split('|').map(str::trim).collect();
    let col = labels.iter().position(|&l| l == "η⁰_{1/3}").expect("column label");
    let row = text.lines().find(|l| l.starts_with("| η⁰_{1/3} |")).expect("row label");
    let cells: Vec<&str> = row.trim_matches('|').split('|').map(str::trim).collect();
    assert_eq!(cells[col], "4·η²_{2/3}");
}

#[test]
fn projective_plane_potential() {
    let (text, v) = json(&[
        "potential",
        "--weights",
        "1,1,1",
        "--max-length",
        "8",
        "--format",
        "json",
    ]);
    assert!(text.contains(r#""alpha":[0,0,8],"value":"12""#), "{text}");
    assert_eq!(v["kind"], "potential");
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
}

#[test]
fn json_reemits_byte_identical() {
    for args in [
        &["info", "-w", "1,2,2,3,3,3"][..],
        &["basis", "-w", "1,2"],
        &["pairing", "-w", "1,2,2,3,3,3"],
        &["gw", "-w", "1,2"],
        &["frobenius", "-w", "1,1,2", "--side", "a"],
        &["check", "-w", "1,2"],
    ] {
        let (text, v) = json(args);
        let mut again = serde_json::to_string(&v).unwrap();
        again.push('\n');
        assert_eq!(again, text, "{args:?}");
    }
}

#[test]
fn worked_example_pairing_blocks() {
    let (text, _) = json(&["pairing", "--weights", "1,2,2,3,3,3"]);
    for v in ["\"1/108\"", "\"1/27\"", "\"1/4\""] {
        assert!(text.contains(v), "missing {v}");
    }
}

#[test]
fn verification_suites_pass() {
    assert_eq!(code(&run(&["correspond", "--classical", "--weights", "2,4"])), 0);
    assert_eq!(code(&run(&["correspond", "--weights", "1,1,2"])), 0);
    assert_eq!(code(&run(&["check", "--weights", "1,2"])), 0);
    assert_eq!(code(&run(&["check", "--weights", "1,2,2,3,3,3"])), 0);
}

#[test]
fn conjectural_values_are_marked() {
    let (_, v) = json(&["gw", "-w", "1,2"]);
    let rows = v["rows"].as_array().unwrap();
    let conjectural = |r: &&Value| r["conjectural"] == Value::Bool(true);
    assert!(rows
        .iter()
        .filter(conjectural)
        .all(|r| r["status"] == "quantum-conjecture"));
    assert!(rows.iter().any(|r| conjectural(&r)));
    let (_, v) = json(&["gw", "-w", "1,1,1"]);
    assert!(v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r.get("conjectural").is_none()));
    let out = run(&["gw", "-w", "1,2"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("conjectured"));
}

#[test]
fn formats() {
    let out = run(&["info", "-w", "1,2", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("key,value\n"));
    assert!(text.contains("sigma,0 1 1/2\n"), "{text}");
    let out = run(&["bside", "-w", "1,2", "--classes", "1", "1", "--format", "md"]);
    assert!(stdout(&out).contains("ω̃_{1}"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["info"])), 2);
    assert_eq!(code(&run(&["info", "-w", "1,0"])), 2);
    assert_eq!(code(&run(&["info", "-w", "a,b"])), 2);
    assert_eq!(code(&run(&["triple", "-w", "1,2", "--classes", "0", "1", "9"])), 2);
    assert_eq!(code(&run(&["potential", "-w", "1,2", "--max-length", "2"])), 2);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn mu_cap() {
    let status = |cap: Option<&str>, w: &str| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_orbimirror"));
        cmd.args(["info", "-w", w]).env_remove("ORBIMIRROR_MAX_MU");
        if let Some(c) = cap {
            cmd.env("ORBIMIRROR_MAX_MU", c);
        }
        cmd.output().unwrap().status.code().unwrap()
    };
    assert_eq!(status(None, "64"), 0);
    assert_eq!(status(None, "65"), 2);
    assert_eq!(status(Some("5"), "1,2,3"), 2);
    assert_eq!(status(Some("6"), "1,2,3"), 0);
}

#[test]
fn writes_output_file() {
    let dir = std::env::temp_dir().join(format!("orbimirror-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("basis.json");
    let out = run(&["basis", "-w", "1,2", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    let v: Value = serde_json::from_str(&written).unwrap();
    assert_eq!(v["mu"], 3);
    std::fs::remove_dir_all(&dir).unwrap();
}
