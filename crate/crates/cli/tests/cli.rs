use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seqspace"))
        .args(args)
        .output()
        .unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

const L2: &str = r#"{"kind":"lorentz","w":[1.0,1.0],"p":2.0}"#;
const L3: &str = r#"{"kind":"lorentz","w":[1.0,0.8,0.6],"p":2.0}"#;
const PATCH: &str =
    r#"[{"start":0.0,"type":"power","coef":1.0,"exp":2.0},{"start":0.6,"type":"affine","slope":1.6,"intercept":-0.6}]"#;
const CUBE4: &str =
    r#"{"kind":"orlicz","pieces":[{"start":0.0,"type":"power","coef":1.0,"exp":3.0}],"flavor":"luxemburg","dim":4}"#;

#[test]
fn norm_of_three_four() {
    let dir = TempDir::new().unwrap();
    let space = write(dir.path(), "lorentz.json", L2);
    let v = json_of(&run(&["norm", "--space", space.to_str().unwrap(), "--x", "3,4"]));
    assert_eq!(v["schema"], "seqspace/1");
    assert_eq!(v["result"]["norm"], 5.0);
    assert_eq!(v["seed"], 0);
    assert!(v["config_hash"].as_str().unwrap().len() == 64);
    assert!(v["tolerances"]["tol"].is_number());
}

#[test]
fn reports_are_byte_identical_for_the_same_seed() {
    let dir = TempDir::new().unwrap();
    let space = write(dir.path(), "l3.json", L3);
    let proj = write(dir.path(), "p.json", r#"{"fs":[[1.0,1.0,1.0]],"us":[[0.5,0.3,0.2]]}"#);
    let args = [
        "opnorm",
        "--space",
        space.to_str().unwrap(),
        "--projection",
        proj.to_str().unwrap(),
        "--seed",
        "11",
        "--budget",
        "4",
        "--steps",
        "30",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let other = run(&[&args[..5], &["--seed", "12", "--budget", "4", "--steps", "30"]].concat());
    let (va, vo) = (json_of(&a), json_of(&other));
    assert_ne!(va["config_hash"], vo["config_hash"]);
    assert_eq!(va["seed"], 11);
}

#[test]
fn output_file_and_formats() {
    let dir = TempDir::new().unwrap();
    let space = write(dir.path(), "l2.json", L2);
    let out = dir.path().join("r.csv");
    let o = run(&[
        "norm",
        "--space",
        space.to_str().unwrap(),
        "--x",
        "[3, 4]",
        "--format",
        "csv",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let csv = std::fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("key,value\n"));
    assert!(csv.contains("result.norm,5.0\n"));
    let human = run(&[
        "norm",
        "--space",
        space.to_str().unwrap(),
        "--x",
        "3,4",
        "--format",
        "human",
    ]);
    assert!(String::from_utf8(human.stdout).unwrap().starts_with("norm: 5.0\n"));
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let dir = TempDir::new().unwrap();
    let cfg = write(
        dir.path(),
        "cfg.json",
        &format!(r#"{{"schema":"seqspace/1","space":{L3},"seed":7,"budget":{{"restarts":3,"steps":20}},"tol":1e-6}}"#),
    );
    let v = json_of(&run(&["norm", "--space", cfg.to_str().unwrap(), "--x", "1,0,0"]));
    assert_eq!(v["seed"], 7);
    assert_eq!(v["budget"]["restarts"], 3);
    assert_eq!(v["tolerances"]["tol"], 1e-6);
    let v = json_of(&run(&[
        "norm",
        "--space",
        cfg.to_str().unwrap(),
        "--x",
        "1,0,0",
        "--seed",
        "9",
    ]));
    assert_eq!(v["seed"], 9);
}

#[test]
fn usage_and_config_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    let space = write(dir.path(), "l2.json", L2);
    let bad_schema = write(dir.path(), "bad.json", r#"{"schema":"seqspace/2"}"#);
    let bad_weight = write(dir.path(), "w.json", r#"{"kind":"lorentz","w":[1.0,2.0],"p":2.0}"#);
    for args in [
        vec!["frobnicate"],
        vec!["norm", "--x", "1,2"],
        vec!["norm", "--space", space.to_str().unwrap(), "--x", "1,2,3"],
        vec!["norm", "--space", space.to_str().unwrap(), "--x", "1,y"],
        vec!["norm", "--space", bad_schema.to_str().unwrap(), "--x", "1,2"],
        vec!["norm", "--space", bad_weight.to_str().unwrap(), "--x", "1,2"],
        vec!["norm", "--space", "/nonexistent.json", "--x", "1,2"],
        vec!["norm", "--space", space.to_str().unwrap(), "--x", "1,2", "--tol", "-1"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn expect_compatible_exits_two_on_adverse_verdicts() {
    let dir = TempDir::new().unwrap();
    let l3 = write(dir.path(), "l3.json", L3);
    let cube = write(dir.path(), "cube.json", CUBE4);
    let hyper = [
        "classify",
        "lorentz-hyperplane",
        "--space",
        l3.to_str().unwrap(),
        "--f",
        "1,1,1",
    ];
    assert_eq!(run(&hyper).status.code(), Some(0));
    let o = run(&[&hyper[..], &["--expect-compatible"]].concat());
    assert_eq!(o.status.code(), Some(2));
    // the report is still written
    assert_eq!(json_of_any(&o)["result"]["verdict"]["reasons"][0], "WEIGHT_NOT_1");

    let sub = [
        "classify",
        "orlicz-subspace",
        "--space",
        cube.to_str().unwrap(),
        "--contains-basis-vector",
    ];
    let o = run(&[&sub[..], &["--f", "1,1,1,0", "--expect-compatible"]].concat());
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json_of_any(&o)["result"]["reason"], "SUPPORT_GT_2");
    let o = run(&[&sub[..], &["--f", "0,0,1,-1", "--expect-compatible"]].concat());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_of_any(&o)["result"]["verdict"], "compatible");
}

fn json_of_any(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn hyperplane_witness_rescales_u() {
    let dir = TempDir::new().unwrap();
    let l3 = write(dir.path(), "l3.json", L3);
    let v = json_of(&run(&[
        "classify",
        "lorentz-hyperplane",
        "--space",
        l3.to_str().unwrap(),
        "--f",
        "1,1,1",
        "--u",
        "1,1,1",
    ]));
    assert_eq!(v["inputs"]["u"][0], 1.0 / 3.0);
    assert!(v["result"]["witness"]["value"].as_f64().unwrap() < 0.0);
    let o = run(&[
        "classify",
        "lorentz-hyperplane",
        "--space",
        l3.to_str().unwrap(),
        "--f",
        "1,-1,0",
        "--u",
        "1,1,0",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn phi_classification_and_conjugate_table() {
    let dir = TempDir::new().unwrap();
    let phi = write(dir.path(), "phi.json", PATCH);
    let v = json_of(&run(&["classify", "phi", "--spec", phi.to_str().unwrap()]));
    assert_eq!(v["result"]["class"], "similar_to");
    assert_eq!(v["result"]["p"], 2.0);
    assert_eq!(v["result"]["c"], 1.0);

    let v = json_of(&run(&[
        "conjugate",
        "--spec",
        phi.to_str().unwrap(),
        "--points",
        "0,1,2",
    ]));
    let table = v["result"]["table"].as_array().unwrap();
    assert_eq!(table[1]["phi_star"], 0.25);
    assert_eq!(table[2]["phi_star"], "inf");
}

#[test]
fn norming_positivity_and_minproj() {
    let dir = TempDir::new().unwrap();
    let l3 = write(dir.path(), "l3.json", L3);
    let s = l3.to_str().unwrap();
    let v = json_of(&run(&["norming", "--space", s, "--x", "3,2,1"]));
    let g: Vec<f64> = serde_json::from_value(v["result"]["functional"].clone()).unwrap();
    assert!((g[0] - 3.0).abs() < 1e-12 && (g[1] - 1.6).abs() < 1e-12 && (g[2] - 0.6).abs() < 1e-12);

    // coordinate projection onto e_1: positive in every Lorentz space
    let proj = write(
        dir.path(),
        "p.json",
        r#"{"fs":[[0.0,1.0,0.0],[0.0,0.0,1.0]],"us":[[0.0,1.0,0.0],[0.0,0.0,1.0]]}"#,
    );
    let args = [
        "positivity",
        "--space",
        s,
        "--projection",
        proj.to_str().unwrap(),
        "--budget",
        "4",
        "--steps",
        "40",
    ];
    let v = json_of(&run(&args));
    assert_ne!(v["result"]["verdict"], "refuted");

    let v = json_of(&run(&[
        "minproj", "--space", s, "--f", "1,0,0", "--budget", "4", "--steps", "40",
    ]));
    let est = v["result"]["norm"]["estimate"].as_f64().unwrap();
    assert!((est - 1.0).abs() < 1e-6, "{est}");
}

#[test]
fn verify_runs_selected_cases() {
    let o = run(&["verify", "--case", "lorentz-example-zeroed", "--case", "AC-9"]);
    let v = json_of(&o);
    let rows = v["result"]["criteria"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r["passed"] == true));
    assert_eq!(run(&["verify", "--case", "nope"]).status.code(), Some(1));
}
