use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn workbench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_green-workbench")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let o = workbench(&all);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn vertex_of_trivial_s3_module() {
    let o = workbench(&["vertex", "--group", "S3", "--p", "2", "--module", "trivial"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("vertex: C2 (Sylow)"), "{text}");
    assert!(text.contains("source: k"), "{text}");
    let v = json(&["vertex", "--group", "S3", "--p", "2", "--module", "trivial"]);
    assert_eq!(v["schema"], "green-workbench/1");
    assert_eq!(v["result"]["vertex"]["order"], 2);
    assert_eq!(v["result"]["is_sylow"], true);
    assert_eq!(v["result"]["source_dim"], 1);
}

#[test]
fn regular_c2_module_is_indecomposable() {
    let v = json(&["decompose", "--group", "C2", "--p", "2", "--module", "regular"]);
    assert_eq!(v["result"]["dims"], serde_json::json!([2]));
    assert_eq!(v["result"]["verified"], true);
}

#[test]
fn decompose_s3_regular_multiplicities() {
    let v = json(&["decompose", "--group", "S3", "--p", "2", "--module", "regular"]);
    let mut dims: Vec<u64> = v["result"]["dims"].as_array().unwrap().iter().map(|d| d.as_u64().unwrap()).collect();
    dims.sort_unstable();
    assert_eq!(dims, vec![2, 2, 2]);
    let mults: Vec<u64> = v["result"]["multiplicities"].as_object().unwrap().values().map(|x| x.as_u64().unwrap()).collect();
    let mut mults = mults;
    mults.sort_unstable();
    assert_eq!(mults, vec![1, 2]);
}

#[test]
fn green_correspondents_in_s4() {
    let f = json(&["green-f", "--group", "S4", "--p", "2", "--module", "trivial"]);
    assert_eq!(f["result"]["correspondent_dim"], 1);
    assert_eq!(f["result"]["family_violations"], 0);
    let g = json(&["green-g", "--group", "S4", "--p", "2", "--module", "trivial"]);
    assert_eq!(g["result"]["correspondent_dim"], 1);
}

#[test]
fn verify_green_default_catalog() {
    let o = workbench(&["verify-green", "--catalog", "default"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("all contexts pass"));
}

#[test]
fn stable_mackey_and_ak_commands() {
    let s = json(&["stable-hom", "--group", "C2", "--p", "2", "--module", "trivial"]);
    assert_eq!(s["result"]["quotient_dim"], 1);
    let s = json(&["stable-hom", "--group", "C3", "--p", "2", "--module", "trivial"]);
    assert_eq!(s["result"]["quotient_dim"], 0);
    let m = json(&[
        "mackey-check", "--group", "S4", "--p", "2", "--subgroup", "sylow", "--other-subgroup", "(0 1 2)", "--module", "regular",
    ]);
    assert_eq!(m["result"]["agree"], true);
    let a = json(&["ak-check", "--group", "S3", "--p", "2"]);
    assert_eq!(a["result"]["holds"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(workbench(&["--help"]).status.code(), Some(0));
    assert_eq!(workbench(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(workbench(&["decompose", "--group", "S3", "--p", "4", "--module", "trivial"]).status.code(), Some(1));
    assert_eq!(workbench(&["decompose", "--group", "Q8", "--p", "2", "--module", "trivial"]).status.code(), Some(1));
    assert_eq!(workbench(&["decompose", "--group", "S3", "--p", "2"]).status.code(), Some(1));
    assert_eq!(workbench(&["decompose", "--group", "A5", "--p", "2", "--module", "regular", "--max-dim", "10"]).status.code(), Some(1));
    assert_eq!(workbench(&["decompose", "--group", "A5", "--p", "2", "--module", "trivial", "--max-group-order", "24"]).status.code(), Some(1));
    // a decomposable module has no vertex
    assert_eq!(workbench(&["vertex", "--group", "S3", "--p", "2", "--module", "regular"]).status.code(), Some(1));
    // D must be a p-group
    assert_eq!(workbench(&["green-f", "--group", "S3", "--p", "2", "--vertex-group", "(0 1 2)", "--module", "trivial"]).status.code(), Some(1));
    let e = workbench(&["catalog", "--catalog", "empty"]);
    assert_eq!(e.status.code(), Some(0));
}

#[test]
fn module_files_and_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = workbench(&["decompose", "--group", "S3", "--p", "3", "--module", "permutation", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();

    // a factor written back out is accepted as a module file
    let factor = &report["result"]["factors"][0]["module"];
    let mfile = dir.path().join("factor.json");
    fs::write(&mfile, serde_json::to_string(factor).unwrap()).unwrap();
    let again = json(&["decompose", "--group", "S3", "--p", "3", "--module", mfile.to_str().unwrap()]);
    assert_eq!(again["result"]["dims"].as_array().unwrap().len(), 1);

    let mut bad = factor.clone();
    bad["generators"][0]["entries"][0][0] = serde_json::json!(7);
    fs::write(&mfile, serde_json::to_string(&bad).unwrap()).unwrap();
    let o = workbench(&["decompose", "--module", mfile.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("generators[0]") && err.contains("entries[0]"), "{err}");

    let cat = dir.path().join("catalog.json");
    fs::write(&cat, r#"{"name": "broken", "criteria": [10], "modules": ["factor.json"]}"#).unwrap();
    assert_eq!(workbench(&["catalog", "--catalog", cat.to_str().unwrap()]).status.code(), Some(1));
    fs::write(&mfile, "{\"group\": \"S3\", \"p\": 3, \"dim\": ").unwrap();
    assert_eq!(workbench(&["catalog", "--catalog", cat.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn reports_are_reproducible() {
    let args = ["decompose", "--group", "A4", "--p", "2", "--module", "regular", "--seed", "17", "--json"];
    let a = workbench(&args);
    let b = workbench(&args);
    assert_eq!(a.stdout, b.stdout);
    let c = workbench(&["catalog", "--catalog", "default", "--json"]);
    let d = workbench(&["catalog", "--catalog", "default", "--json"]);
    assert_eq!(c.stdout, d.stdout);
    let v: Value = serde_json::from_slice(&c.stdout).unwrap();
    assert_eq!(v["result"]["criteria"].as_array().unwrap().len(), 10);
}
