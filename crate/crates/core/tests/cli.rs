use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sechoch"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn fixture(dir: &Path, name: &str) -> PathBuf {
    let o = run(&["fixture", name]);
    assert_eq!(code(&o), 0);
    write(dir, &format!("{name}.json"), &stdout(&o))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn last_json(o: &Output) -> Value {
    serde_json::from_str(stdout(o).lines().last().unwrap()).unwrap()
}

#[test]
fn cohomology_prints_table_and_json() {
    let dir = TempDir::new().unwrap();
    let t2 = fixture(dir.path(), "T2");
    let o = run(&["cohomology", "--triple", s(&t2), "--max-degree", "2"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.starts_with("n\tdim_C\tdim_Z\tdim_B\tdim_H\n"), "{out}");
    let j = last_json(&o);
    let h: Vec<u64> = j["degrees"].as_array().unwrap().iter().map(|d| d["dim_h"].as_u64().unwrap()).collect();
    assert_eq!(h, vec![2, 1, 1]);
}

#[test]
fn cohomology_without_a_form_is_fine() {
    let dir = TempDir::new().unwrap();
    let t3 = fixture(dir.path(), "T3");
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&t3).unwrap()).unwrap();
    v.as_object_mut().unwrap().remove("form");
    let p = write(dir.path(), "noform.json", &v.to_string());
    let o = run(&["cohomology", "--triple", s(&p), "--max-degree", "1"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn resource_cap_exits_three() {
    let dir = TempDir::new().unwrap();
    let t4 = fixture(dir.path(), "T4");
    let o = run(&["cohomology", "--triple", s(&t4), "--max-degree", "5"]);
    assert_eq!(code(&o), 3);
    let o = run(&["cohomology", "--triple", s(&t4), "--max-degree", "1", "--max-coordinates", "10"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn invalid_input_exits_two() {
    let dir = TempDir::new().unwrap();
    let junk = write(dir.path(), "junk.json", "{not json");
    assert_eq!(code(&run(&["cohomology", "--triple", s(&junk), "--max-degree", "1"])), 2);
    let missing = dir.path().join("missing.json");
    assert_eq!(code(&run(&["cohomology", "--triple", s(&missing), "--max-degree", "1"])), 2);

    // a non-associative product
    let t2 = fixture(dir.path(), "T2");
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&t2).unwrap()).unwrap();
    v["A"]["structure"][1][1] = serde_json::json!([1, 0]);
    v["A"]["structure"][1][0] = serde_json::json!([0, 0]);
    let bad = write(dir.path(), "bad.json", &v.to_string());
    let o = run(&["cohomology", "--triple", s(&bad), "--max-degree", "1"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("validation"));

    assert_eq!(code(&run(&["fixture", "T9"])), 2);
}

#[test]
fn bracket_needs_a_form_for_delta() {
    let dir = TempDir::new().unwrap();
    let t2 = fixture(dir.path(), "T2");
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&t2).unwrap()).unwrap();
    v.as_object_mut().unwrap().remove("form");
    let p = write(dir.path(), "noform.json", &v.to_string());
    let f = write(dir.path(), "f.json", &stdout(&run(&["cocycle", "--triple", s(&p), "--degree", "1"])));
    let args = ["bracket", "--triple", s(&p), "--f", s(&f), "--g", s(&f)];
    for method in ["bv", "both"] {
        let mut a = args.to_vec();
        a.extend(["--method", method]);
        assert_eq!(code(&run(&a)), 2, "{method}");
    }
    let mut a = args.to_vec();
    a.extend(["--method", "circle"]);
    assert_eq!(code(&run(&a)), 0);
}

#[test]
fn bracket_rejects_non_cocycles() {
    let dir = TempDir::new().unwrap();
    let t2 = fixture(dir.path(), "T2");
    let f = write(dir.path(), "f.json", r#"{"degree":1,"values":[[1,0],[0,0]]}"#);
    let g = write(dir.path(), "g.json", &stdout(&run(&["cocycle", "--triple", s(&t2), "--degree", "1"])));
    let o = run(&["bracket", "--triple", s(&t2), "--f", s(&f), "--g", s(&g)]);
    assert_eq!(code(&o), 4);
    assert!(String::from_utf8_lossy(&o.stderr).contains("not a cocycle"));
}

#[test]
fn bracket_writes_both_cochains() {
    let dir = TempDir::new().unwrap();
    let t2 = fixture(dir.path(), "T2");
    let f = write(dir.path(), "f.json", &stdout(&run(&["cocycle", "--triple", s(&t2), "--degree", "1", "--seed", "1"])));
    let g = write(dir.path(), "g.json", &stdout(&run(&["cocycle", "--triple", s(&t2), "--degree", "2", "--seed", "2"])));
    let out = dir.path().join("out");
    let o = run(&["bracket", "--triple", s(&t2), "--f", s(&f), "--g", s(&g), "--out-dir", s(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("classes_equal\ttrue"));
    let j = last_json(&o);
    assert_eq!(j["classes_equal"], Value::Bool(true));
    for name in ["bracket_circle.json", "bracket_bv.json"] {
        let c: Value = serde_json::from_str(&std::fs::read_to_string(out.join(name)).unwrap()).unwrap();
        assert_eq!(c["degree"], 2);
    }
}

#[test]
fn verify_is_byte_identical_for_a_seed() {
    let dir = TempDir::new().unwrap();
    let t3 = fixture(dir.path(), "T3");
    let args = ["verify", "--triple", s(&t3), "--suite", "lemma-delta", "--seed", "7", "--trials", "3"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["verify", "--triple", s(&t3), "--suite", "lemma-delta", "--seed", "8", "--trials", "3"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn verify_failure_exits_one() {
    let dir = TempDir::new().unwrap();
    let t3 = fixture(dir.path(), "T3");
    let o = run(&["verify", "--triple", s(&t3), "--suite", "bv-theorem", "--n", "2", "--m", "2", "--trials", "2"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).lines().any(|l| l.starts_with("FAIL")));
}

#[test]
fn verify_passes_on_dual_numbers() {
    let dir = TempDir::new().unwrap();
    let t2 = fixture(dir.path(), "T2");
    for suite in ["complex", "lemma-delta", "lemma-h", "bv-theorem", "classes"] {
        let o = run(&["verify", "--triple", s(&t2), "--suite", suite]);
        assert_eq!(code(&o), 0, "{suite}: {}", stdout(&o));
    }
}

#[test]
fn fixture_output_round_trips() {
    let dir = TempDir::new().unwrap();
    for name in ["T1", "T2", "T3", "T4", "T5"] {
        let p = fixture(dir.path(), name);
        let text = std::fs::read_to_string(&p).unwrap();
        let ctx = sechoch::io::parse_triple(&text).unwrap();
        assert_eq!(sechoch::io::triple_to_canonical(&ctx) + "\n", text);
    }
}

#[test]
fn cocycle_output_round_trips() {
    let dir = TempDir::new().unwrap();
    let t5 = fixture(dir.path(), "T5");
    let o = run(&["cocycle", "--triple", s(&t5), "--degree", "2", "--seed", "4"]);
    assert_eq!(code(&o), 0);
    let ctx = sechoch::io::read_triple(&t5).unwrap();
    let f = sechoch::io::parse_cochain(&ctx, &stdout(&o)).unwrap();
    assert_eq!(sechoch::io::cochain_to_canonical(&f) + "\n", stdout(&o));
    assert!(sechoch::operators::differential(&ctx, &f).unwrap().is_zero());
}

#[test]
fn cocycle_in_an_acyclic_degree_exits_two() {
    let dir = TempDir::new().unwrap();
    let t5 = fixture(dir.path(), "T5");
    assert_eq!(code(&run(&["cocycle", "--triple", s(&t5), "--degree", "1"])), 2);
}
