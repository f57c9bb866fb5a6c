use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        let f = Fixture {
            dir: tempfile::tempdir().unwrap(),
        };
        f.write("bidisc.json", r#"{"kind":"bidisc"}"#);
        f.write("dab.json", r#"{"kind":"dab","a":[0.6,0.0],"b":[0.6,0.0]}"#);
        f.write(
            "identity.json",
            r#"{"A":[[[1,0],[0,0]],[[0,0],[1,0]]],"B":[[[0,0],[0,0]],[[0,0],[0,0]]]}"#,
        );
        f.write(
            "mixed.json",
            r#"{"A":[[[0,0],[0,0]],[[0,0],[1,0]]],"B":[[[1,0],[0,0]],[[0,0],[0,0]]]}"#,
        );
        f.write("conj.json", r#"{"components":["conj(z1)","conj(z2)"]}"#);
        f
    }

    fn write(&self, name: &str, text: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    }

    fn path(&self, name: &str) -> String {
        self.dir.path().join(name).to_string_lossy().into_owned()
    }
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_invmetrics"))
        .args(args)
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

#[test]
fn dist_on_bidisc() {
    let f = Fixture::new();
    let out = run(&["dist", "--spec", &f.path("bidisc.json"), "--point", "0,0,0,0", "--point", "0.5,0,0,0"]);
    assert_eq!(code(&out), 0);
    let d = json(&out)["distance"].as_f64().unwrap();
    assert!((d - 0.5f64.atanh()).abs() < 1e-12);

    let out = run(&["dist", "--spec", &f.path("bidisc.json"), "--point", "0.1,0.2,-0.3,0", "--point", "0.1,0.2,-0.3,0"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["distance"].as_f64().unwrap(), 0.0);
}

#[test]
fn outside_point_exits_2() {
    let f = Fixture::new();
    let out = run(&["dist", "--spec", &f.path("bidisc.json"), "--point", "0,0,0,0", "--point", "1.5,0,0,0"]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("not in the domain"));
}

#[test]
fn config_errors_exit_3() {
    let f = Fixture::new();
    let spec = f.path("bidisc.json");
    for args in [
        vec!["dist", "--spec", &spec, "--point", "0,0,0", "--point", "0,0,0,0"],
        vec!["dist", "--point", "0,0,0,0", "--point", "0,0,0,0"],
        vec!["dist", "--spec", "/nonexistent/spec.json", "--point", "0,0,0,0", "--point", "0,0,0,0"],
        vec!["metric", "--spec", &spec, "--point", "0,0,0,0", "--vector", "1,0,0,0", "--tol", "-1"],
        vec!["circle-image", "--a", "x", "--b", "0"],
        vec!["no-such-command"],
        vec!["dist", "--seed", "-3"],
    ] {
        assert_eq!(code(&run(&args)), 3, "{args:?}");
    }
    let bad = f.write("bad.json", r#"{"kind":"dab","a":[0.1,0],"b":[0.1,0]}"#);
    let out = run(&["dist", "--spec", bad.to_str().unwrap(), "--point", "0,0,0,0", "--point", "0,0,0,0"]);
    assert_eq!(code(&out), 3);
    let unbound = f.write(
        "unbound.json",
        r#"{"kind":"custom","members":["z1","q*z2"],"membership":["z1","z2"]}"#,
    );
    let out = run(&["dist", "--spec", unbound.to_str().unwrap(), "--point", "0,0,0,0", "--point", "0,0,0,0"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["--version"])), 0);
}

#[test]
fn circle_image_document() {
    let out = run(&["circle-image", "--a", "1", "--b", "0.5"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().trim(),
        r#"{"min":0.5,"max":1.5,"is_circle":false}"#
    );
    let out = run(&["lemma4", "--a", "0,0.3", "--b", "0"]);
    assert_eq!(json(&out)["is_circle"], Value::Bool(true));
}

#[test]
fn indicatrix_reports_three_lines() {
    let f = Fixture::new();
    let out = run(&["indicatrix", "--spec", &f.path("dab.json"), "--point", "0,0,0,0"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["line_count"], 3);
    assert_eq!(v["functionals"].as_array().unwrap().len(), 3);
}

#[test]
fn metric_and_faces() {
    let f = Fixture::new();
    let out = run(&["metric", "--spec", &f.path("dab.json"), "--point", "0,0,0,0", "--vector", "1,0,1,0"]);
    assert!((json(&out)["metric"].as_f64().unwrap() - 1.2).abs() < 1e-12);

    let out = run(&["faces", "--spec", &f.path("dab.json"), "--point", "0,0,0,0", "--vector", "1,0,0.5,0"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["face"]["active_index"], 0);
    assert!(v["safe_radius"].as_f64().unwrap() > 0.0);

    // Interior point: no face.
    let out = run(&["faces", "--spec", &f.path("dab.json"), "--point", "0,0,0,0", "--vector", "0.5,0,0,0"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn classify_linear_maps() {
    let f = Fixture::new();
    let out = run(&["classify", "--map", &f.path("identity.json")]);
    assert_eq!(json(&out)["classification"]["class"], "CLinear");

    let out = run(&["classify", "--map", &f.path("identity.json"), "--spec", &f.path("dab.json")]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["verdict"]["hypotheses_hold"], true);
    assert_eq!(v["verdict"]["contradiction"], false);

    let out = run(&["classify", "--map", &f.path("mixed.json"), "--spec", &f.path("dab.json")]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["classification"]["class"], "Neither");
    assert!(v["verdict"]["line_match"]["failure"].is_object());
    assert_eq!(v["verdict"]["contradiction"], false);
}

#[test]
fn classify_expression_map_pointwise() {
    let f = Fixture::new();
    let out = run(&[
        "classify", "--map", &f.path("conj.json"), "--spec", &f.path("dab.json"),
        "--point", "0,0,0,0", "--point", "0.1,0,-0.1,0",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let pts = json(&out)["points"].as_array().unwrap().clone();
    assert_eq!(pts.len(), 2);
    assert!(pts.iter().all(|p| p["label"] == "Anti"));
}

#[test]
fn isometry_check_identity() {
    let f = Fixture::new();
    let out = run(&["isometry-check", "--map", &f.path("identity.json"), "--spec", &f.path("dab.json"), "--spec2", &f.path("dab.json")]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["verdict"], "Holomorphic");
    assert!(v["worst_isometry_residual"].as_f64().unwrap() < 1e-6);

    let grid = f.write("grid.json", r#"{"center":[[0,0],[0,0]],"spacing":0.02,"n":2}"#);
    let out = run(&["isometry-check", "--map", &f.path("conj.json"), "--spec", &f.path("dab.json"), "--grid", grid.to_str().unwrap()]);
    let v = json(&out);
    assert_eq!(v["verdict"], "Antiholomorphic");
    assert_eq!(v["points"].as_array().unwrap().len(), 16);

    let broken = f.write("broken.json", r#"{"points":[[[0,0],[0,0]],[[0.1,0],[0,0]]],"edges":[]}"#);
    let out = run(&["isometry-check", "--map", &f.path("identity.json"), "--spec", &f.path("dab.json"), "--grid", broken.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
}

#[test]
fn lempert_gap_is_deterministic() {
    let f = Fixture::new();
    let args = [
        "lempert-gap", "--spec", &f.path("dab.json"), "--point", "0,0,0,0", "--point", "0.1,0,0.1,0",
        "--degree", "2", "--budget", "2000", "--seed", "7",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["lower_bound_ok"], true);
    assert!(v["gap"].as_f64().unwrap() >= -1e-9);

    let out = run(&["lempert-gap", "--spec", &f.path("bidisc.json"), "--point", "0,0,0,0", "--point", "0.5,0,0,0", "--degree", "1"]);
    assert!(json(&out)["gap"].as_f64().unwrap() <= 1e-6);

    let out = run(&["lempert-gap", "--spec", &f.path("bidisc.json"), "--point", "0,0,0,0", "--point", "0,0,0,0"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn out_and_pretty() {
    let f = Fixture::new();
    let target = f.path("out.json");
    let out = run(&["circle-image", "--a", "1", "--b", "0.5", "--out", &target]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(Path::new(&target)).unwrap()).unwrap();
    assert_eq!(written["max"], 1.5);

    let out = run(&["circle-image", "--a", "1", "--b", "0.5", "--pretty"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("min") && l.ends_with("0.5")));
}

#[test]
fn indicatrix_output_round_trips() {
    let f = Fixture::new();
    let out = run(&["indicatrix", "--spec", &f.path("dab.json"), "--point", "0.1,0,0,0.1"]);
    let v = json(&out);
    let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, again);
}
