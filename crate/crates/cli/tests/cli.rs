use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilmirror")).args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_nilmirror"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn classify_by_shorthand_and_name() {
    let o = run(&["classify", "(0,0,0,12,13,23)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "h7");

    let o = run(&["--format", "json", "classify", "h9"]);
    let v = json(&o);
    assert_eq!(v["name"], "h9");
    assert_eq!(v["salamon"], "(0,0,0,0,12,14+25)");
    assert_eq!(v["fingerprint"]["betti"], serde_json::json!([4, 7, 8]));
}

#[test]
fn bad_input_exits_one_with_message() {
    let o = run(&["classify", "(0,0,0,12,99)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
    assert!(o.stdout.is_empty());

    let o = run(&["parse", "(0,0,0,12,13"]);
    assert_eq!(o.status.code(), Some(1));

    let o = run(&["invariants", "1,2,3"]);
    assert_eq!(o.status.code(), Some(1));

    let o = run(&["mirror-check", "h2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn reads_stdin() {
    let o = run_stdin(&["classify"], "(0,0,0,0,12,13)\n");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "h6");
}

#[test]
fn invariants_accept_list_and_json() {
    let a = json(&run(&["--format", "json", "invariants", "0,1,0,0,1,0"]));
    let b = json(&run(&["--format", "json", "invariants", r#"{"rho": 1, "C": "1"}"#]));
    assert_eq!(a, b);
    assert_eq!(a["underlying"], "h6");
    assert_eq!(a["classify_realified"], "h6");
}

#[test]
fn f1_reports_class_and_axioms() {
    let v = json(&run(&["--format", "json", "f1", "0,0,0,0,0,0"]));
    assert_eq!(v["f1"], "h1");
    assert_eq!(v["axioms"]["d_squared"], true);
    assert_eq!(v["brackets"], serde_json::json!([]));
}

#[test]
fn symplectic_witness_is_printed() {
    let v = json(&run(&["--format", "json", "symplectic", "h8"]));
    assert_eq!(v["exists"], true);
    assert!(v["witness"].is_string());
}

#[test]
fn mirror_checks() {
    for name in ["h1", "h6", "h8", "h9", "h10"] {
        let o = run(&["--format", "json", "mirror-check", name]);
        assert_eq!(o.status.code(), Some(0), "{name}");
        assert_eq!(json(&o)["verified"], true);
    }
    let o = run(&["mirror-check", "h6", "--params", "1,2,3,4,5"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["mirror-check", "h6", "--params", "1,2,3,4,0"]);
    assert_eq!(o.status.code(), Some(1));

    let v = json(&run(&["--format", "json", "mirror-check", "h11"]));
    assert_eq!(v["verdict"], "contradiction");
    assert_eq!(v["coefficient"], "40i");
}

#[test]
fn table_sweep_is_reproducible() {
    let a = run(&["--seed", "1", "--samples", "3", "verify-tablef1"]);
    let b = run(&["--seed", "1", "--samples", "3", "verify-tablef1"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("incidence set matches"));
}

#[test]
fn default_seed_is_logged() {
    let o = run(&["--samples", "2", "verify-table1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("seed: 1 (default)"));
}

#[test]
fn main_theorem_passes() {
    let o = run(&["--format", "json", "--seed", "3", "--samples", "4", "verify-main"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["pass"], true);
    assert_eq!(v["rows"].as_array().unwrap().len(), 17);
}
