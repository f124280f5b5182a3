//! End-to-end runs of the `orbit` binary.

use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use tempfile::TempDir;

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn orbit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbit")).args(args).output().expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn classify_examples() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", r#"{"additive": [["2","0"],["0","4"]]}"#);
    let out = orbit(&["classify", "--input", path(&a)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["kind"], "fibration");
    assert_eq!(v["witness"], "x1^2/x2");

    let b = write(&dir, "b.json", r#"{"additive": [["2","0"],["0","3"]]}"#);
    let v = json(&orbit(&["classify", "--input", path(&b)]));
    assert_eq!(v["kind"], "dense");
    assert_eq!(v["witness"]["additive"], serde_json::json!(["1", "1"]));

    let c = write(&dir, "c.json", r#"{"torus": [[0,-1],[1,0]]}"#);
    assert_eq!(json(&orbit(&["classify", "--input", path(&c)]))["kind"], "fibration");
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", "{ not json");
    let out = orbit(&["classify", "--input", path(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());

    let singular = write(&dir, "s.json", r#"{"additive": [["1","2"],["2","4"]]}"#);
    let out = orbit(&["classify", "--input", path(&singular)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not dominant"));

    let missing = dir.path().join("missing.json");
    assert_eq!(orbit(&["classify", "--input", path(&missing)]).status.code(), Some(2));
}

#[test]
fn verify_round_trip_and_forgery() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", r#"{"additive": [["2","0"],["0","4"]]}"#);
    let b = write(&dir, "b.json", r#"{"additive": [["2","0"],["0","3"]]}"#);
    let t = write(&dir, "t.json", r#"{"torus": [[0,-1],[1,0]]}"#);
    for spec in [&a, &b, &t] {
        let verdict = orbit(&["classify", "--input", path(spec)]);
        let v = write(&dir, "v.json", std::str::from_utf8(&verdict.stdout).unwrap());
        let out = orbit(&["verify", "--input", path(spec), "--verdict", path(&v), "--steps", "12"]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
        assert_eq!(json(&out)["passed"], true);
    }

    let forged = write(&dir, "f.json", r#"{"kind":"fibration","provenance":"DiagonalMonomial","witness":"x1"}"#);
    let out = orbit(&["verify", "--input", path(&b), "--verdict", path(&forged)]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(json(&out)["passed"], false);

    // A two-variable verdict against a one-variable problem.
    let small = write(&dir, "one.json", r#"{"additive": [["2"]]}"#);
    let dense = write(&dir, "d.json", r#"{"kind":"dense","provenance":"DenseAdditive","witness":{"additive":["1","1"]}}"#);
    assert_eq!(orbit(&["verify", "--input", path(&small), "--verdict", path(&dense)]).status.code(), Some(2));
}

#[test]
fn orbit_listing() {
    let dir = TempDir::new().unwrap();
    let u = write(&dir, "u.json", r#"{"additive": [["1","1"],["0","1"]]}"#);
    let out = orbit(&["orbit", "--input", path(&u), "--point", "0,1", "--steps", "5", "--format", "text"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "(0,1)\n(1,1)\n(2,1)\n(3,1)\n(4,1)\n(5,1)\n");

    let two = write(&dir, "two.json", r#"{"additive": [["2"]]}"#);
    let v = json(&orbit(&["orbit", "--input", path(&two), "--point", "1", "--steps", "3"]));
    let xs: Vec<&str> = v["orbit"].as_array().unwrap().iter().map(|p| p["additive"][0].as_str().unwrap()).collect();
    assert_eq!(xs, ["1", "2", "4", "8"]);

    let d = write(&dir, "d.json", r#"{"additive": [["2","0"],["0","3"]]}"#);
    let v = json(&orbit(&["orbit", "--input", path(&d), "--point", "1,1", "--steps", "2"]));
    assert_eq!(v["orbit"].as_array().unwrap().len(), 3);
}

#[test]
fn growth_and_density() {
    let dir = TempDir::new().unwrap();
    let rot = write(&dir, "r.json", r#"{"torus": [[0,-1],[1,0]]}"#);
    let v = json(&orbit(&["growth", "--input", path(&rot), "--vector", "1,0", "--steps", "50"]));
    assert_eq!(v["verdict"], "LinearlyBounded");
    assert_eq!(v["cyclotomic_factor"], true);

    let d = write(&dir, "d.json", r#"{"additive": [["2","0"],["0","3"]], "options": {"steps": 3}}"#);
    let v = json(&orbit(&["density-check", "--input", path(&d), "--degree", "2"]));
    assert_eq!(v["outcome"], "FullRank");
    // Six monomials need six orbit points, so three steps are raised to five.
    assert_eq!(v["steps_adjusted"]["used"], 5);

    let f = write(&dir, "f.json", r#"{"additive": [["2","0"],["0","4"]]}"#);
    let v = json(&orbit(&["density-check", "--input", path(&f), "--point", "1,1"]));
    assert_eq!(v["outcome"], "VanishingPolynomial");
    assert_eq!(v["vanishing_polynomial"]["text"], "x1^2 - x2");
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.json", r#"{"additive": [["0","2"],["1","0"]], "torus": [[2,1],[1,1]], "options": {"seed": 7}}"#);
    let first = orbit(&["classify", "--input", path(&m)]);
    let second = orbit(&["classify", "--input", path(&m)]);
    assert_eq!(first.stdout, second.stdout);
    let v = write(&dir, "v.json", std::str::from_utf8(&first.stdout).unwrap());
    let a = orbit(&["verify", "--input", path(&m), "--verdict", path(&v)]);
    let b = orbit(&["verify", "--input", path(&m), "--verdict", path(&v)]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
}
