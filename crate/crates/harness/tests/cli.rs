use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn convkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_convkit")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &TempDir, name: &str, body: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p.display().to_string()
}

const SIERPINSKI: &str = r#"{"points": ["a", "b"], "pointlim": {"a": ["a"], "b": ["a", "b"]}}"#;

#[test]
fn validate_reports_and_rejects() {
    let dir = TempDir::new().unwrap();
    let good = write(&dir, "s.json", SIERPINSKI);
    let o = convkit(&["space", "validate", &good]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("ok: 2 points"));

    let broken = write(&dir, "broken.json", "{\"points\": [\"a\", \"b\"],\n\"pointlim\": {\"a\": [\"a\"], \"b\": [\"a\"]}}");
    let o = convkit(&["space", "validate", &broken]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    let o = convkit(&["space", "validate", &dir.path().join("missing.json").display().to_string()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn classify_identity_is_positive_on_map_notions() {
    let dir = TempDir::new().unwrap();
    write(&dir, "target.json", SIERPINSKI);
    let src = r#"{"points": ["a", "b"], "pointlim": {"a": ["a"], "b": ["a", "b"]},
        "maps": [{"name": "id", "to": "target.json", "graph": {"a": "a", "b": "b"}},
                 {"name": "const", "to": "target.json", "graph": {"a": "a", "b": "a"}}]}"#;
    let file = write(&dir, "doc.json", src);
    let o = convkit(&["classify", &file, "id", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let verdicts = v["verdicts"].as_array().unwrap();
    assert!(!verdicts.is_empty());
    // meshability of the identity is accessibility of the space, not a map property
    let map_notions = verdicts.iter().filter(|r| !r["notion"].as_str().unwrap().starts_with("meshable"));
    assert!(map_notions.clone().count() >= 6);
    assert!(map_notions.clone().all(|r| r["value"] == serde_json::Value::Bool(true)), "{verdicts:?}");

    let o = convkit(&["classify", &file, "const"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let quotient = text.lines().find(|l| l.starts_with("quotient(F1)")).unwrap();
    assert!(quotient.contains("not-applicable"));

    let o = convkit(&["classify", &file, "id", "--classes", "mr(int(clF1),F1),Fw"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("compact-relation(mr(int(clF1),F1))"));
    assert!(stdout(&o).contains("compact-relation(Fw)"));

    let o = convkit(&["classify", &file, "nope"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_small_suite() {
    let o = convkit(&["verify", "--suite", "adh-d", "--max-points", "2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["fails"], 0);
    assert_eq!(v[0]["instances"], 10);

    let one = convkit(&["verify", "--suite", "local", "--max-points", "2", "--jobs", "1"]);
    let many = convkit(&["verify", "--suite", "local", "--max-points", "2", "--jobs", "3"]);
    let digest = |o: &Output| stdout(o).lines().find(|l| l.trim_start().starts_with("digest")).map(str::to_owned);
    assert!(digest(&one).is_some());
    assert_eq!(digest(&one), digest(&many));

    assert_eq!(convkit(&["verify", "--suite", "nope", "--max-points", "2"]).status.code(), Some(2));
    assert_eq!(convkit(&["verify", "--suite", "adh-d", "--max-points", "0"]).status.code(), Some(2));
    assert_eq!(convkit(&["verify", "--suite", "adh-d", "--classes", "Q"]).status.code(), Some(2));
}

#[test]
fn max_points_cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_convkit"))
        .args(["verify", "--suite", "adh-d", "--max-points", "3"])
        .env("CONVKIT_MAX_POINTS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn contour_eval_prints_trace() {
    let dir = TempDir::new().unwrap();
    let file = write(
        &dir,
        "c.json",
        r#"{"points": ["a", "b", "c"], "cascade": {"filter": [1], "children": [{"label": "a"}, {"label": "c"}]}}"#,
    );
    let o = convkit(&["contour", "eval", &file]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("contour: {c}↑"), "{text}");
    assert_eq!(text.lines().count(), 4);
    assert_eq!(convkit(&["contour", "eval", Path::new("/nonexistent").to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn fan_demos() {
    let o = convkit(&["fan", "demo", "refuter", "--picker", "a=1,b=0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verified     true"));
    for demo in ["witness", "contour", "diagonal"] {
        assert_eq!(convkit(&["fan", "demo", demo]).status.code(), Some(0), "{demo}");
    }
    assert_eq!(convkit(&["fan", "demo", "battery", "--cases", "50"]).status.code(), Some(0));
    assert_eq!(convkit(&["fan", "demo", "refuter", "--picker", "a=?"]).status.code(), Some(2));
    assert_eq!(convkit(&["fan", "demo", "bogus"]).status.code(), Some(2));
}
