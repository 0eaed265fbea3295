//! End-to-end runs of the `hrl` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn hrl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hrl"))
        .args(args)
        .env_remove("HRL_CAP")
        .output()
        .expect("spawn hrl")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn construct(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut all = vec!["construct"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--out", path.to_str().unwrap()]);
    let o = hrl(&all);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    path
}

fn claim<'a>(report: &'a Value, id: &str) -> &'a Value {
    report["claims"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["id"] == id)
        .unwrap_or_else(|| panic!("no claim {id}"))
}

#[test]
fn counterexample_claims_hold() {
    let o = hrl(&["verify", "example210", "--p", "2"]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["kind"], "suite");
    for id in ["claim (1)", "claim (2)", "claim (3)"] {
        assert_eq!(claim(&r, id)["passed"], 1);
        assert_eq!(claim(&r, id)["failed"], 0);
    }
}

#[test]
fn matrix_algebra_is_semisimple() {
    let dir = TempDir::new().unwrap();
    let m2 = construct(
        dir.path(),
        "m2.json",
        &["matrix-algebra", "--field", "Q", "--n", "2"],
    );
    let o = hrl(&["radical", "jacobson", m2.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["kind"], "report");
    assert_eq!(r["ambient_dim"], 4);
    assert_eq!(r["dim"], 0);
}

#[test]
fn truncated_polynomial_radical_in_text() {
    let dir = TempDir::new().unwrap();
    let a = construct(
        dir.path(),
        "a.json",
        &["truncated-polynomial", "--field", "F3", "--m", "3"],
    );
    let o = hrl(&["--format", "text", "radical", "baer", a.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(
        stdout(&o).contains("dimension 2 of 3 over F3"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn group_algebra_suite_and_its_precondition() {
    let o = hrl(&[
        "verify", "thm28", "--group", "Z2", "--field", "F3", "--count", "50", "--seed", "0",
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(json(&o)["instances"], 100);

    let o = hrl(&[
        "verify", "thm28", "--group", "Z2", "--field", "F2", "--count", "5",
    ]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("precondition"));
}

#[test]
fn malformed_input_exits_2() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"kind\": \"algebra\", \"field\": ").unwrap();
    assert_eq!(code(&hrl(&["validate", bad.to_str().unwrap()])), 2);

    // Parses, but the unit is wrong.
    std::fs::write(
        &bad,
        r#"{"kind":"algebra","field":"F2","labels":["a","b"],"unit":["0","1"],
            "table":[[["1","0"],["0","0"]],[["0","0"],["0","1"]]]}"#,
    )
    .unwrap();
    let o = hrl(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2, "{}", stdout(&o));
}

#[test]
fn enumeration_cap_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let m3 = construct(
        dir.path(),
        "m3.json",
        &["matrix-algebra", "--field", "F3", "--n", "3"],
    );
    let o = hrl(&["radical", "vnregular", m3.to_str().unwrap(), "--cap", "4"]);
    assert_eq!(code(&o), 2);
    let o = Command::new(env!("CARGO_BIN_EXE_hrl"))
        .args(["radical", "vnregular", m3.to_str().unwrap()])
        .env("HRL_CAP", "4")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn reports_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let o = hrl(&[
            "verify",
            "axioms-h-baer",
            "--count",
            "10",
            "--seed",
            "3",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0);
        let mut v: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
        v.as_object_mut().unwrap().remove("elapsed_ms");
        serde_json::to_string(&v).unwrap()
    };
    assert_eq!(run("a.json"), run("b.json"));
}

#[test]
fn radical_help_cites_anchors() {
    let o = hrl(&["radical", "--help"]);
    assert_eq!(code(&o), 0);
    let help = stdout(&o);
    for anchor in [
        "Definition 3.4",
        "Definition 2.1",
        "Proposition 1.3",
        "Section 0",
    ] {
        assert!(help.contains(anchor), "missing {anchor}");
    }
}

#[test]
fn constructed_files_validate() {
    let dir = TempDir::new().unwrap();
    let cases: [(&str, &[&str]); 6] = [
        ("tri.json", &["triangular", "--field", "F5", "--n", "3"]),
        ("g.json", &["group", "--group", "S3"]),
        (
            "kg.json",
            &["group-algebra", "--group", "Z3", "--field", "Q"],
        ),
        (
            "dual.json",
            &["dual-group-algebra", "--group", "Z2", "--field", "F3"],
        ),
        (
            "u.json",
            &["restricted-enveloping", "--field", "F2", "--lambda", "1"],
        ),
        ("ex.json", &["example210", "--p", "3"]),
    ];
    for (name, args) in cases {
        let path = construct(dir.path(), name, args);
        let o = hrl(&["validate", path.to_str().unwrap()]);
        assert_eq!(
            code(&o),
            0,
            "{name}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        assert!(stdout(&o).starts_with("valid "));
    }
}

#[test]
fn smash_product_of_example() {
    let dir = TempDir::new().unwrap();
    let ex = construct(dir.path(), "ex.json", &["example210", "--p", "2"]);
    let o = hrl(&["smash", ex.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let a = json(&o);
    assert_eq!(a["kind"], "algebra");
    assert_eq!(a["labels"].as_array().unwrap().len(), 4);

    let o = hrl(&["smash", "--dual-action", ex.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["kind"], "action");
}

#[test]
fn generated_instance_rechecks() {
    let dir = TempDir::new().unwrap();
    let spec = r#"{"recipe":{"type":"truncated-polynomial","m":3},"field":"F3",
                   "action":{"type":"group-grading","group":"Z2"},"seed":4,"basis_change":true}"#;
    let inst = construct(dir.path(), "inst.json", &["instance", "--spec", spec]);
    let path = inst.to_str().unwrap();
    assert_eq!(code(&hrl(&["validate", path])), 0);
    for suite in ["thm28", "thm37", "prop24", "thm43"] {
        let o = hrl(&["check", suite, path]);
        assert_eq!(
            code(&o),
            0,
            "{suite}: {}{}",
            stdout(&o),
            String::from_utf8_lossy(&o.stderr)
        );
    }
}

#[test]
fn counterexample_claims_fail_on_a_trivial_action() {
    let dir = TempDir::new().unwrap();
    let spec = r#"{"recipe":{"type":"truncated-polynomial","m":2},"field":"F2",
                   "action":{"type":"trivial"},"seed":0}"#;
    let inst = construct(dir.path(), "inst.json", &["instance", "--spec", spec]);
    let o = hrl(&["check", "example210", inst.to_str().unwrap()]);
    assert_eq!(code(&o), 1, "{}", stdout(&o));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn graded_regularity() {
    let dir = TempDir::new().unwrap();
    let m2 = construct(
        dir.path(),
        "m2.json",
        &["matrix-algebra", "--field", "F2", "--n", "2"],
    );
    // Elementary grading: e_ij in degree g_i^{-1} g_j with g = (0, 1).
    let o = hrl(&[
        "grregular",
        m2.to_str().unwrap(),
        "--grading",
        "0,1,1,0",
        "--group",
        "Z2",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["gr_regular"], true);

    let t = construct(
        dir.path(),
        "t.json",
        &["truncated-polynomial", "--field", "F2", "--m", "2"],
    );
    let o = hrl(&[
        "grregular",
        t.to_str().unwrap(),
        "--grading",
        "0,1",
        "--group",
        "Z2",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["gr_regular"], false);
}
