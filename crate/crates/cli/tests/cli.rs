use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_unibranch"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn tropical_dot() {
    let o = run(&["tropical", "--pair", "3,5", "--format", "dot"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("graph tropical {"));
    assert_eq!(out.lines().filter(|l| l.contains(" -- ")).count(), 4);
    assert!(out.contains("v1 -- v3 [label=\"2\"]"));
}

#[test]
fn tropical_json_parses_back() {
    let o = run(&["tropical", "--pair", "3,7", "--format", "json"]);
    let t = unibranch::Tropical::from_json(&stdout(&o)).unwrap();
    assert_eq!(t.legs().len(), 1);
}

#[test]
fn equiv_of_fibonacci_and_non_fibonacci_pair() {
    let o = run(&["equiv", "--pair", "5,8", "--pair", "3,7"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "(5,8) and (3,7) are not equivalent\n");
    let o = run(&[
        "equiv", "--pair", "1,4", "--pair", "2,8", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["equivalent"], true);
}

#[test]
fn mirror_conic_cubic() {
    let o = run(&[
        "mirror",
        "--curve",
        "y-x^2:2",
        "--curve",
        "y-x^2-y^3:3",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["report"]["i_q"], 6);
    assert_eq!(v["report"]["hypertangent"], true);
    assert_eq!(v["report"]["mirror_holds"], true);
    assert_eq!(v["report"]["type_b"], serde_json::json!({"m": 1, "n": 2}));
    assert_eq!(v["certificate"]["types_equal"], true);
}

#[test]
fn resolve_and_analyze() {
    let o = run(&["resolve", "--curve", "y^3-x^5:5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let types: Vec<(u64, u64)> = v["steps"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| (s["mult"].as_u64().unwrap(), s["contact"].as_u64().unwrap()))
        .collect();
    assert_eq!(types, vec![(3, 5), (2, 3), (1, 2), (1, 1)]);
    assert_eq!(
        stdout(&run(&["resolve", "--pair", "3,5", "--format", "json"])),
        stdout(&o)
    );

    let o = run(&["analyze", "--curve", "y^2-x^4-x^5:5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["unibranch"], false);
}

#[test]
fn numeric_verbs() {
    assert_eq!(
        stdout(&run(&["delta", "--pair", "3,5"])),
        "delta = 4 for (3,5)\n"
    );
    assert_eq!(
        stdout(&run(&["codim", "--pair", "2,3", "--degree", "4"])),
        "codimension = 5 for (2,3) on degree 4 curves\n"
    );
    let o = run(&[
        "identities",
        "--pair",
        "3,5",
        "--pair",
        "2,3",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["key_identity"].as_array().unwrap().len(), 2);
}

#[test]
fn exit_codes() {
    // input errors
    assert_eq!(run(&["tropical", "--pair", "5,3"]).status.code(), Some(1));
    assert_eq!(
        run(&["tropical", "--pair", "1,2", "--format", ""])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        run(&["codim", "--pair", "2,5", "--degree", "3"])
            .status
            .code(),
        Some(1)
    );
    let o = run(&["analyze", "--curve", "y^2-x^3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("INVALID_FORMAT"));
    assert_eq!(run(&["analyze", "--curve", "1+y:1"]).status.code(), Some(1));
    // help is not an error
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn non_unibranch_pair_is_input_error() {
    let o = run(&["mirror", "--curve", "y^2-2*x^2-x^3:3", "--curve", "y-x^2:2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("NOT_UNIBRANCH"));
}

#[test]
fn sweep_is_deterministic_and_passes() {
    let a = run(&["sweep", "--max-n", "30"]);
    let b = run(&["sweep", "--max-n", "30"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("key_identity: ok"));
    let o = run(&["sweep", "--max-n", "10", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["cells"], 45);
}
