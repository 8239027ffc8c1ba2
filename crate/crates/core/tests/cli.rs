use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fdb-operad"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn delta_of_a3() {
    let o = run(&[
        "delta",
        "--operad",
        "comm_plus",
        "--class",
        "A_3",
        "--out",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "inner,outer,coefficient\nA_1^3,A_3,1\nA_1 A_2,A_2,3\nA_3,A_1,1\n"
    );
}

#[test]
fn fdb_check_json_report() {
    let o = run(&[
        "fdb-check",
        "--operad",
        "comm_plus",
        "--cap",
        "6",
        "--out",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], true);
    assert_eq!(v["cap"], 6);
    let e = &v["entries"][0];
    for k in ["inner", "outer", "lhs", "rhs", "match"] {
        assert!(e.get(k).is_some(), "{k}");
    }
}

#[test]
fn output_is_deterministic() {
    let args = [
        "green",
        "--operad",
        "multivariate",
        "--colours",
        "u,v,w",
        "--cap",
        "3",
        "--out",
        "json",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = [
        "checks",
        "--operad",
        "free_binary",
        "--cap",
        "3",
        "--seed",
        "9",
        "--instances",
        "20",
        "--out",
        "json",
    ];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn bell_table() {
    let o = run(&["bell", "--n", "4", "--out", "csv"]);
    assert_eq!(
        stdout(&o),
        "k,type,count\n1,4,1\n2,1+3,4\n2,2+2,3\n3,1+1+2,6\n4,1+1+1+1,1\n"
    );
    assert_eq!(run(&["bell", "--n", "11"]).status.code(), Some(2));
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(run(&["green", "--operad", "lie"]).status.code(), Some(2));
    assert_eq!(run(&["green"]).status.code(), Some(2));
    let o = run(&[
        "delta",
        "--operad",
        "comm_plus",
        "--cap",
        "3",
        "--class",
        "A_5",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("A_5"));
}

#[test]
fn spec_files_roundtrip_and_report_pointers() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("m.json");
    let o = run(&[
        "export",
        "--operad",
        "multivariate",
        "--cap",
        "3",
        "--output",
        spec.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let s = spec.to_str().unwrap();
    assert_eq!(run(&["validate", "--spec", s]).status.code(), Some(0));
    let from_spec = run(&["fdb-check", "--spec", s, "--out", "csv"]);
    let builtin = run(&[
        "fdb-check",
        "--operad",
        "multivariate",
        "--cap",
        "3",
        "--out",
        "csv",
    ]);
    assert_eq!(from_spec.status.code(), Some(0));
    assert_eq!(from_spec.stdout, builtin.stdout);

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"mode":"symmetric","colours":["x"],"cap":1,"ops":[{"id":"u","in":["y"],"out":"x"}],"compose":[]}"#).unwrap();
    let o = run(&["validate", "--spec", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        String::from_utf8_lossy(&o.stderr).contains("/ops/0/in/0"),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
}

#[test]
fn corrupted_spec_fails_validation_with_exit_1() {
    let names = ["e", "a", "b"];
    let mut compose = Vec::new();
    for x in 0..3 {
        for y in 0..3 {
            let r = if (x, y) == (1, 1) { 0 } else { (x + y) % 3 };
            compose.push(
                serde_json::json!({"outer": names[x], "inner": [names[y]], "result": names[r]}),
            );
        }
    }
    let v = serde_json::json!({
        "mode": "identity",
        "colours": ["*"],
        "cap": 1,
        "ops": names.iter().map(|n| serde_json::json!({"id": n, "in": ["*"], "out": "*"})).collect::<Vec<_>>(),
        "compose": compose,
    });
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("z3.json");
    std::fs::write(&spec, v.to_string()).unwrap();
    let o = run(&[
        "validate",
        "--spec",
        spec.to_str().unwrap(),
        "--out",
        "json",
    ]);
    assert_eq!(
        o.status.code(),
        Some(1),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let violations = r["report"]["violations"].as_array().unwrap();
    assert_eq!(violations.len(), 4);
    let detail = violations[0]["detail"].as_str().unwrap();
    assert!(!detail.contains('#'), "{detail}");
    assert!(detail.contains('a'), "{detail}");
}
