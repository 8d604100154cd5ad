use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const YX: &str = "field Q\ngens x y\norder deglex y > x\nrels y*x\n";
const COMM: &str = "gens y x\nrels y*x - x*y\n";
const FAMILY: &str = "\
ideal X = x
ideal Y = y
ideal M = x, y
witness X: J = 0, x = x, N = 0
witness Y: J = 0, x = y, N = X
witness M: J = X, x = y, N = X
";

struct Fixture {
    dir: tempfile::TempDir,
}

impl Fixture {
    fn new() -> Fixture {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("yx.txt"), YX).unwrap();
        fs::write(dir.path().join("comm.txt"), COMM).unwrap();
        fs::write(dir.path().join("fam.txt"), FAMILY).unwrap();
        Fixture { dir }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn cache(&self) -> PathBuf {
        self.path("cache")
    }

    fn run(&self, args: &[&str]) -> Output {
        Command::new(env!("CARGO_BIN_EXE_ncgraded"))
            .args(args)
            .current_dir(self.dir.path())
            .env("NCGRADED_CACHE", self.cache())
            .output()
            .unwrap()
    }

    fn json(&self, args: &[&str]) -> Value {
        let out = self.run(args);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        serde_json::from_slice(&out.stdout).unwrap()
    }
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().to_string())
        .collect()
}

#[test]
fn solve_commutative_pair() {
    let f = Fixture::new();
    let v = f.json(&["solve", "comm.txt", "--coeffs", "x,y", "--deg", "8", "--payload-only"]);
    assert_eq!(strings(&v["degrees"]), ["2"]);
    assert_eq!(v["verified"], Value::Bool(true));
}

#[test]
fn record_shape() {
    let f = Fixture::new();
    let v = f.json(&["gb", "yx.txt", "--deg", "5"]);
    assert_eq!(v["schema"], "ncgraded/1");
    assert_eq!(v["command"], "gb");
    assert_eq!(v["bounds"]["D"], "5");
    assert_eq!(v["input_sha256"].as_str().unwrap().len(), 64);
    assert_eq!(strings(&v["payload"]["dimensions"]), ["1", "2", "3", "4", "5", "6"]);
}

#[test]
fn default_bound_is_ten() {
    let f = Fixture::new();
    let v = f.json(&["hilbert", "yx.txt"]);
    assert_eq!(v["bounds"]["D"], "10");
    assert_eq!(v["payload"]["coefficients"].as_array().unwrap().len(), 11);
}

#[test]
fn hilbert_exact_on_monomial_input() {
    let f = Fixture::new();
    let v = f.json(&["hilbert", "yx.txt", "--deg", "20", "--exact", "--payload-only"]);
    assert_eq!(v["rational"]["text"], "1 / (1 - 2z + z^2)");
    assert_eq!(v["coefficients"][20], "21");
}

#[test]
fn family_with_series() {
    let f = Fixture::new();
    let v = f.json(&[
        "family",
        "yx.txt",
        "--spec",
        "fam.txt",
        "--series",
        "--fil-rate",
        "--deg",
        "8",
        "--payload-only",
    ]);
    assert_eq!(v["verdict"]["verified"], Value::Bool(true));
    assert_eq!(v["solve"]["R"]["text"], "1 / (1 - 2z + z^2)");
    assert_eq!(v["solve"]["members"]["Y"]["text"], "z / (1 - z)");
    assert!(v["fil_rate"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["holds"] == Value::Bool(true)));
}

#[test]
fn rproc_counterexample() {
    let f = Fixture::new();
    let v = f.json(&["rproc", "comm.txt", "--r", "1", "--deg", "4", "--payload-only"]);
    assert_eq!(v["certificate"]["certified"], Value::Bool(false));
    assert_eq!(v["verification"]["p"], "y");
    assert_eq!(v["verification"]["q"], "x*x");
}

#[test]
fn payloads_are_deterministic() {
    let f = Fixture::new();
    for args in [
        &[
            "probe",
            "yx.txt",
            "--degree",
            "2",
            "--deg",
            "8",
            "--seed",
            "7",
            "--payload-only",
        ][..],
        &["enumerate", "--gens", "2", "--payload-only"][..],
        &[
            "family",
            "yx.txt",
            "--discover",
            "--series",
            "--deg",
            "6",
            "--payload-only",
        ][..],
    ] {
        let a = f.run(args);
        let b = f.run(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

fn only_entry(dir: &Path) -> PathBuf {
    let entries: Vec<PathBuf> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(entries.len(), 1);
    entries[0].clone()
}

#[test]
fn cache_hit_and_corruption() {
    let f = Fixture::new();
    let args = ["gb", "comm.txt", "--deg", "6"];
    let first = f.json(&args);
    assert_eq!(first["cache"], "miss");
    let second = f.json(&args);
    assert_eq!(second["cache"], "hit");
    assert_eq!(first["payload"], second["payload"]);

    let entry = only_entry(&f.cache());
    let text = fs::read_to_string(&entry).unwrap();
    fs::write(&entry, text.replace("y*x - x*y", "y*x - 2*x*y")).unwrap();
    let third = f.json(&args);
    assert_eq!(third["cache"], "recomputed");
    assert_eq!(third["payload"], first["payload"]);
    assert_eq!(f.json(&args)["cache"], "hit");
}

#[test]
fn no_cache_flag() {
    let f = Fixture::new();
    let v = f.json(&["gb", "yx.txt", "--no-cache"]);
    assert_eq!(v["cache"], Value::Null);
    assert!(!f.cache().exists());
}

#[test]
fn errors() {
    let f = Fixture::new();
    let out = f.run(&["frobnicate", "yx.txt"]);
    assert!(!out.status.success());
    let out = f.run(&["solve", "yx.txt"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("--coeffs"));

    fs::write(f.path("bad.txt"), "gens x y\nrels y*x - x\n").unwrap();
    let out = f.run(&["gb", "bad.txt"]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("2:") && err.contains("inhomogeneous"), "{err}");
}
