use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_nkverify"))
        .args(args)
        .output()
        .unwrap();
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (
        out.status.code().unwrap_or(-1),
        json,
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("nkverify-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check {name}"))
}

#[test]
fn verify_builtin_models() {
    let (code, j, _) = run(&["verify", "s6"]);
    assert_eq!(code, 0);
    assert_eq!(j["reports"][0]["details"]["alpha_type"], 1.0);
    assert_eq!(j["passed"], true);

    let (code, j, _) = run(&["verify", "flat-kahler:3"]);
    assert_eq!(code, 0);
    assert_eq!(j["reports"][0]["details"]["is_strict"], false);
}

#[test]
fn broken_model_file_names_failing_identity() {
    let (_, model, _) = run(&["export", "s6"]);
    let mut model = model;
    let a = model["A"][0][0][2].as_f64().unwrap();
    model["A"][0][0][2] = Value::from(a + 0.3);
    let path = scratch("broken.json");
    std::fs::write(&path, model.to_string()).unwrap();
    let (code, j, stderr) = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(check(&j["reports"][0], "nk1")["status"], "fail");
    assert!(stderr.contains("FAIL  nk1"));
}

#[test]
fn exported_model_round_trips_through_verify() {
    let (code, model, _) = run(&["export", "twistor:2:1"]);
    assert_eq!(code, 0);
    let path = scratch("twistor.json");
    std::fs::write(&path, model.to_string()).unwrap();
    let (code, j, _) = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{j}");
}

#[test]
fn random_lagrangians() {
    let (code, j, _) = run(&["lagrangian", "s6", "--random", "100", "--seed", "7"]);
    assert_eq!(code, 0);
    let details = &j["reports"][0]["details"];
    assert_eq!(
        (
            details["trials"].as_u64(),
            details["trials_passed"].as_u64()
        ),
        (Some(100), Some(100))
    );

    let (code, j, _) = run(&["lagrangian", "product:c1,s6", "--random", "100"]);
    assert_eq!(code, 0);
    assert_eq!(j["reports"][0]["details"]["dim_l_k_counts"]["1"], 100);
}

#[test]
fn lagrangian_basis_files() {
    let good = scratch("good.json");
    std::fs::write(
        &good,
        r#"{"model":"s6","basis":[[0,1,0,0,0,0],[0,0,0,1,0,0],[0,0,0,0,0,1]]}"#,
    )
    .unwrap();
    let (code, j, _) = run(&["lagrangian", "--basis", good.to_str().unwrap()]);
    assert_eq!(code, 0, "{j}");

    let bad = scratch("bad.json");
    std::fs::write(
        &bad,
        r#"{"model":"s6","basis":[[1,0,0,0,0,0],[0,1,0,0,0,0],[0,0,1,0,0,0]]}"#,
    )
    .unwrap();
    let (code, j, _) = run(&["lagrangian", "--basis", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(j["error"]["kind"], "NotLagrangian");
    assert!(j["error"]["message"].as_str().unwrap().contains("(v0, v1)"));
}

fn spectrum(j: &Value) -> Vec<(f64, u64)> {
    let rep = j["reports"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["details"]["r_spectrum"].is_array())
        .unwrap();
    rep["details"]["r_spectrum"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            (
                e["value"].as_f64().unwrap(),
                e["multiplicity"].as_u64().unwrap(),
            )
        })
        .collect()
}

#[test]
fn twistor_spectra_and_skips() {
    let (code, j, _) = run(&["twistor", "-n", "2", "-k", "1"]);
    assert_eq!(code, 0);
    let s = spectrum(&j);
    assert_eq!(s.len(), 2);
    assert!(
        (s[0].0 - 4.0).abs() < 1e-7 && s[0].1 == 8 && (s[1].0 - 8.0).abs() < 1e-7 && s[1].1 == 2
    );

    let (code, j, _) = run(&["twistor", "-n", "3", "-k", "0.5", "--random", "0"]);
    assert_eq!(code, 0);
    let s = spectrum(&j);
    assert!(
        (s[0].0 - 1.0).abs() < 1e-7 && s[0].1 == 12 && (s[1].0 - 3.0).abs() < 1e-7 && s[1].1 == 2
    );

    let (code, j, _) = run(&["twistor", "-n", "1"]);
    assert_eq!(code, 0);
    let last = j["reports"].as_array().unwrap().last().unwrap();
    assert_eq!(check(last, "twistor_minimality")["status"], "skipped");
}

#[test]
fn classification_table() {
    let (code, j, stderr) = run(&["classify-su2"]);
    assert_eq!(code, 0);
    let c = &j["results"]["classification"];
    let sigs: Vec<&str> = c["solution_signatures"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap())
        .collect();
    assert!(sigs.contains(&"(+,+,+)") && sigs.contains(&"(+,-,-)"));
    assert_eq!(c["stated_classes"].as_array().unwrap().len(), 4);
    assert!(stderr.contains("discrepancy: diag(1,1,-1)"));
    assert_eq!(run(&["classify-su2", "--samples", "10"]).0, 2);
}

#[test]
fn deformation_commands() {
    let (code, j, _) = run(&["deform", "s3s3"]);
    assert_eq!(code, 0);
    let d = &j["results"]["deformation"];
    assert!(
        (d["lambda"].as_f64().unwrap() - 9.0 * d["alpha_type"].as_f64().unwrap()).abs() < 1e-12
    );
    assert_eq!(d["ratio"], 0.3);

    let (code, j, _) = run(&["deform", "flat-kahler:3"]);
    assert_eq!(code, 2);
    assert_eq!(j["error"]["kind"], "DegenerateTorsion");

    assert_eq!(run(&["deform", "s3s3", "graph:1,1,-1"]).0, 1);
    assert_eq!(run(&["deform", "s3s3", "sideways"]).0, 2);
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(run(&["verify", "nosuch"]).0, 2);
    assert_eq!(run(&["verify", "/nonexistent/model.json"]).0, 2);
    assert_eq!(run(&["verify", "s6", "--tol", "-1"]).0, 2);
    assert_eq!(run(&["twistor", "-n", "0"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
}

#[test]
fn json_out_matches_stdout() {
    let path = scratch("out.json");
    let out = Command::new(env!("CARGO_BIN_EXE_nkverify"))
        .args(["verify", "s3s3", "--json-out", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(std::fs::read(&path).unwrap(), out.stdout);
}
