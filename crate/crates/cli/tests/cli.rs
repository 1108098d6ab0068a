use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "corpus", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_demazure"))
        .args(args)
        .env_remove("DEMAZURE_FORMAT")
        .env_remove("DEMAZURE_JOBS")
        .output()
        .unwrap()
}

fn temp_file(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("demazure-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn analyze_weight_simplex() {
    let o = run(&["analyze", "--format", "json", &corpus("weight.poly")]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["aut"]["dim"], "13");
    assert_eq!(v["aut"]["reductive"], false);
    assert_eq!(v["roots"]["all"], 10);
    assert_eq!(v["violations"], serde_json::json!([]));
}

#[test]
fn iso_exit_codes() {
    let o = run(&["iso", &corpus("cube3.poly"), &corpus("e1cubed.poly")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("map found"));
    let o = run(&["iso", &corpus("cube3.poly"), &corpus("cross3.poly")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "none");
}

#[test]
fn parse_errors_exit_2() {
    let bad = temp_file("ragged.poly", "2 3\n1 2 3\n4 5\n");
    let o = run(&["analyze", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn precondition_failures_exit_3() {
    let flat = temp_file("flat.poly", "2 2\n1 0\n0 1\n");
    assert_eq!(run(&["analyze", &flat]).status.code(), Some(3));
    let off = temp_file("off.poly", "2 3\n0 1 0\n0 0 1\n");
    assert_eq!(run(&["roots", &off]).status.code(), Some(3));
    assert_eq!(run(&["decompose", &corpus("p2.poly")]).status.code(), Some(3));
}

#[test]
fn roots_and_criteria_commands() {
    let o = run(&["roots", &corpus("p2.poly")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 6);
    let o = run(&["criteria", "--format", "json", &corpus("cube3.poly")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["reductive"], true);
    assert_eq!(v["aut_dim"], 9);
    let o = run(&["decompose", &corpus("cube3.poly")]);
    assert!(stdout(&o).starts_with("k: 3\nG dim: 0\n"));
}

#[test]
fn batch_preserves_order() {
    let text = [corpus("p2.poly"), corpus("cube2.poly"), corpus("hexagon.poly")]
        .iter()
        .map(|p| std::fs::read_to_string(p).unwrap())
        .collect::<Vec<_>>()
        .join("\n");
    let file = temp_file("batch.poly", &text);
    let serial = run(&["batch", &file]);
    let parallel = run(&["batch", "--jobs", "4", &file]);
    assert_eq!(serial.status.code(), Some(0));
    assert_eq!(serial.stdout, parallel.stdout);
    let inputs: Vec<String> = stdout(&serial).lines().filter(|l| l.starts_with("input:")).map(String::from).collect();
    assert_eq!(inputs.len(), 3);
    assert!(inputs[0].contains("projective plane"));
    assert!(inputs[2].contains("hexagon"));
}

#[test]
fn env_overrides_format() {
    let o = Command::new(env!("CARGO_BIN_EXE_demazure"))
        .args(["analyze", &corpus("p1.poly")])
        .env("DEMAZURE_FORMAT", "json")
        .output()
        .unwrap();
    assert!(serde_json::from_slice::<serde_json::Value>(&o.stdout).is_ok());
}

#[test]
fn verify_is_independent_of_thread_count() {
    let one = run(&["verify", "--jobs", "1"]);
    let three = run(&["verify", "--jobs", "3", "--format", "text"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, three.stdout);
    assert!(stdout(&one).ends_with("16 polygon classes; 0 violations\n"));
}
