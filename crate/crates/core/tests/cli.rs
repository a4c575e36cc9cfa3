use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mackey-fields"))
        .args(args)
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn dual_dihedral4() {
    let out = run(&["dual", "--spec", "dihedral:4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["entries"].as_array().unwrap().len(), 5);
    assert_eq!(v["result"]["dim_square_sum"], 8);
    assert_eq!(v["seed"], 0);
    assert_eq!(v["config_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn dual_cyclic_with_trivial_k() {
    let v = json(&run(&["dual", "--spec", "cyclic:6"]));
    assert_eq!(v["result"]["entries"].as_array().unwrap().len(), 6);
}

#[test]
fn malformed_spec_names_the_key() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"invariant_factors":[4],"k":{"builtin":"cyclic:2"},"actoin":[]}"#,
    )
    .unwrap();
    let out = run(&["dual", "--spec", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("actoin"), "{}", stderr(&out));
}

#[test]
fn unknown_builtin_spec_is_an_input_error() {
    let out = run(&["dual", "--spec", "icosahedral:3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("dihedral:n"), "{}", stderr(&out));
}

#[test]
fn verify_is_deterministic_and_passes() {
    let args = [
        "verify", "--spec", "square:3", "--trials", "5", "--seed", "42",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["seed"], 42);
    let other = run(&[
        "verify", "--spec", "square:3", "--trials", "5", "--seed", "43",
    ]);
    assert_ne!(json(&a)["config_digest"], json(&other)["config_digest"]);
}

#[test]
fn fourier_emits_one_matrix_per_entry() {
    let v = json(&run(&["fourier", "--spec", "dihedral:4", "--seed", "3"]));
    let entries = v["result"].as_array().unwrap();
    assert_eq!(entries.len(), 5);
    let dims: Vec<u64> = entries.iter().map(|e| e["dim"].as_u64().unwrap()).collect();
    for (e, d) in entries.iter().zip(dims) {
        assert_eq!(e["matrix"].as_array().unwrap().len() as u64, d);
    }
}

#[test]
fn net_motion_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("motion");
    let out = run(&[
        "net",
        "--scenario",
        "motion",
        "--out",
        prefix.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let rows = json(&out)["result"]["table"]["rows"]
        .as_array()
        .unwrap()
        .clone();
    assert_eq!(rows.len(), 8);
    let defects: Vec<f64> = rows.iter().map(|r| r["defect"].as_f64().unwrap()).collect();
    assert!(defects.windows(2).all(|w| w[1] < w[0]));
    let csv = std::fs::read_to_string(dir.path().join("motion.csv")).unwrap();
    assert!(csv.starts_with("index,defect,refinement_defect_delta\n"));
    assert_eq!(csv.lines().count(), 9);
    assert_eq!(
        std::fs::read(dir.path().join("motion.json")).unwrap(),
        out.stdout
    );
}

#[test]
fn net_cube_flags_override_config() {
    let out = run(&[
        "net",
        "--scenario",
        "cube",
        "--depth",
        "6",
        "--function",
        "product:3:0",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let rows = json(&out)["result"]["table"]["rows"]
        .as_array()
        .unwrap()
        .clone();
    assert_eq!(rows.len(), 6);
    assert!(rows[2..]
        .iter()
        .all(|r| r["defect"].as_f64().unwrap() == 0.0));
}

#[test]
fn net_stationary_finite_is_zero() {
    let out = run(&["net", "--scenario", "finite"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let rows = json(&out)["result"]["table"]["rows"]
        .as_array()
        .unwrap()
        .clone();
    assert!(rows.iter().all(|r| r["defect"].as_f64().unwrap() <= 1e-10));
}

#[test]
fn net_negative_control_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("neg.json");
    std::fs::write(
        &path,
        r#"{"scenario":"cube","depth":8,"payload":"product:3:0","perturbation":{"shift":0.5,"rows":"odd"}}"#,
    )
    .unwrap();
    let out = run(&["net", "--scenario", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["pass"], false);
}

#[test]
fn invalid_scenario_lists_valid_names() {
    let out = run(&["net", "--scenario", "torus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr(&out).contains("motion, cube, finite"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn vanish_reports() {
    let out = run(&["vanish", "--scenario", "motion", "--function", "radial:2:2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(json(&out)["result"]["vanishing_from"], 2.0);
    let finite = json(&run(&["vanish", "--scenario", "finite"]));
    assert_eq!(finite["result"]["applicable"], false);
    let cube = run(&["vanish", "--scenario", "cube", "--depth", "6"]);
    assert_eq!(cube.status.code(), Some(0), "{}", stderr(&cube));
}
