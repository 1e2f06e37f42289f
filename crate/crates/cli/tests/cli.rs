use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn lievar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lievar")).args(args).output().expect("run lievar")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const HEISENBERG: &str = r#"{"modulus": 3, "rank": 3, "brackets": [{"i": 1, "j": 2, "value": [0, 0, 1]}]}"#;

#[test]
fn basis_dump() {
    let o = lievar(&["basis", "--rank", "2", "--class", "3"]);
    assert_eq!(code(&o), 0);
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[0], "x1 1");
    assert_eq!(lines[2], "[x1,x2] 2");
    assert!(stderr(&o).contains("counts 2/1/2"));
    let o = lievar(&["basis", "--rank", "1", "--class", "2"]);
    assert_eq!(stdout(&o).lines().count(), 1);
    let o = lievar(&["basis", "--rank", "2", "--class", "3", "--json"]);
    let v = json(&o);
    let counts: Vec<u64> = v["degrees"].as_array().unwrap().iter().map(|d| d["count"].as_u64().unwrap()).collect();
    assert_eq!(counts, vec![2, 1, 2]);
    assert_eq!(code(&lievar(&["basis", "--rank", "0"])), 2);
    assert_eq!(code(&lievar(&["basis", "--rank", "2", "--domain", "zmod:1"])), 2);
}

#[test]
fn basis_guard_exits_three() {
    let o = lievar(&["basis", "--rank", "6", "--class", "12"]);
    assert_eq!(code(&o), 3, "{}", stderr(&o));
    assert!(stderr(&o).contains("resource guard"));
}

#[test]
fn eval_words() {
    let o = lievar(&[
        "eval", "(x,y;x,z)", "--assign", "x=x1", "--assign", "y=x2", "--assign", "z=x3", "--rank", "3", "--class",
        "4", "--json",
    ]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["zero"], false);
    assert_eq!(v["degrees"], serde_json::json!([4]));
    let o = lievar(&["eval", "(x,x)"]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "0"));
    let o = lievar(&["eval", "(x,y)", "--assign", "x=x1"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("`y`"));
    let o = lievar(&["eval", "(x,y)", "--assign", "x=(x1,x2)", "--assign", "y=x1", "--rank", "2", "--class", "3"]);
    assert_eq!(stdout(&o).trim(), "-[x1,[x1,x2]]");
    assert_eq!(code(&lievar(&["eval", "(x,,y)"])), 2);
    assert_eq!(code(&lievar(&["eval", "(x,y)", "--assign", "x"])), 2);
}

#[test]
fn eval_assignment_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "a.json", r#"{"x": "x1", "y": "(x2,x1)"}"#);
    let o = lievar(&["eval", "(x,y)", "--assignments", &f, "--rank", "2", "--class", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "-[x1,[x1,x2]]");
}

#[test]
fn check_finite_ring() {
    let dir = tempfile::tempdir().unwrap();
    let ring = write(dir.path(), "h.json", HEISENBERG);
    let o = lievar(&["check", "--ring", &ring, "--identity", "(x,y,x) = 0"]);
    assert_eq!(code(&o), 0);
    let o = lievar(&["check", "--ring", &ring, "--identity", "(x,y) = 0", "--json"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert_eq!(v["pass"], false);
    assert_eq!(v["results"][0]["witness"]["x"], "(0,1,0)");
    assert_eq!(v["results"][0]["witness"]["y"], "(1,0,0)");
    assert_eq!(v["results"][0]["value"], "(0,0,2)");
    let ids = write(dir.path(), "ids.txt", "# metabelian and class two\n(x1,x2;x3,x4) = 0\n(x,y,z) = 0\n");
    let o = lievar(&["check", "--ring", &ring, "--identities", &ids]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn check_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "{");
    assert_eq!(code(&lievar(&["check", "--ring", &bad, "--identity", "(x,y) = 0"])), 2);
    let not_lie = write(
        dir.path(),
        "nl.json",
        r#"{"modulus": 5, "rank": 3, "brackets": [{"i": 1, "j": 2, "value": [0, 0, 1]}, {"i": 1, "j": 3, "value": [1, 0, 0]}]}"#,
    );
    let o = lievar(&["check", "--ring", &not_lie, "--identity", "(x,y) = 0"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("not a Lie ring"));
    let ring = write(dir.path(), "h.json", HEISENBERG);
    assert_eq!(code(&lievar(&["check", "--ring", &ring])), 2);
    assert_eq!(code(&lievar(&["check", "--ring", &ring, "--identity", "(x,y = 0"])), 2);
    assert_eq!(code(&lievar(&["check", "--ring", "/nonexistent", "--identity", "(x,y) = 0"])), 2);
}

#[test]
fn check_relatively_free_ring() {
    let dir = tempfile::tempdir().unwrap();
    let variety = write(dir.path(), "v.txt", "(x,y,x) = 0\n");
    let o = lievar(&[
        "check", "--variety", &variety, "--identity", "(x1,x2;x3,x4) = 0", "--rank", "4", "--class", "4", "--domain",
        "zmod:3",
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = lievar(&["check", "--identity", "(x,y,z) = 0", "--rank", "2", "--class", "3", "--json"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert_eq!(v["results"][0]["holds"], false);
    assert!(v["results"][0]["witness"].is_object());
}

#[test]
fn check_guard_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let ring = write(dir.path(), "big.json", r#"{"modulus": 7, "rank": 4, "brackets": []}"#);
    let o = lievar(&["check", "--ring", &ring, "--identity", "(x,y) = 0"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn verify_examples() {
    let o = lievar(&["verify", "thm-2.1-n1-p3", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["observed"]["exponent"], 3);
    assert_eq!(v["certification"], "full");
    assert_eq!(v["pass"], true);
    for key in ["id", "claim", "observed", "certification", "degrees", "pass"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    let o = lievar(&["verify", "lem-1.3-char5", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let d3 = v["degrees"].as_array().unwrap().iter().find(|d| d["degree"] == 3).unwrap();
    assert_eq!(d3["quotient"], serde_json::json!([]));
    let o = lievar(&["verify", "prop-2.5-n2", "--json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["observed"]["equal"], true);
}

#[test]
fn verify_exit_codes() {
    assert_eq!(code(&lievar(&["verify", "no-such-id"])), 2);
    assert_eq!(code(&lievar(&["verify"])), 2);
    assert_eq!(code(&lievar(&["verify", "--deep"])), 2);
    let dir = tempfile::tempdir().unwrap();
    let failing = write(
        dir.path(),
        "m.json",
        r#"[{"id": "abelian-is-class-one", "statement": "false on purpose", "identities": ["(x,y,z) = 0"],
             "domain": "int", "rank": 2, "class": 3, "claim": {"kind": "nilpotency_exponent", "bound": 1}}]"#,
    );
    let o = lievar(&["verify", "--all", "--manifests", &failing]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("FAIL"));
    let guarded = write(
        dir.path(),
        "g.json",
        r#"[{"id": "too-big", "statement": "over the basis cap", "domain": "int", "rank": 8, "class": 9,
             "claim": {"kind": "nilpotency_exponent", "bound": 1}}]"#,
    );
    assert_eq!(code(&lievar(&["verify", "too-big", "--manifests", &guarded])), 3);
    let unknown = write(
        dir.path(),
        "u.json",
        r#"[{"id": "odd", "statement": "", "domain": "int", "rank": 2, "class": 2, "claim": {"kind": "mystery"}}]"#,
    );
    assert_eq!(code(&lievar(&["verify", "odd", "--manifests", &unknown])), 2);
}

#[test]
fn verify_all_is_deterministic() {
    let a = lievar(&["verify", "--all", "--json", "--workers", "1"]);
    let b = lievar(&["verify", "--all", "--json", "--workers", "3"]);
    assert_eq!(code(&a), 0, "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let reports = json(&a);
    let ids: Vec<&str> = reports.as_array().unwrap().iter().map(|r| r["id"].as_str().unwrap()).collect();
    assert!(ids.contains(&"lem-1.1"));
    assert!(!ids.contains(&"thm-2.3-n1-p5"));
}

#[test]
fn list_manifests() {
    let o = lievar(&["list"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().any(|l| l.starts_with("thm-2.3-n1-p5") && l.contains("deep")));
}
