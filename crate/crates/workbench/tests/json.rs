use green_core::groups::preset;
use green_core::reps::{dual, regular_module, trivial_module};
use green_core::Prime;
use green_workbench::json::{canonical, read_module, GroupJson, ModuleJson};
use green_workbench::report;
use serde_json::Value;

#[test]
fn reports_reserialize_byte_identically() {
    let g = preset("A4").unwrap();
    let m = regular_module(&g, Prime::new(2).unwrap());
    let d = green_core::decomp::decompose(&m).unwrap();
    let doc = report::envelope("decompose", serde_json::json!({"group": "A4"}), report::decomposition(&d).unwrap());
    let text = canonical(&doc);
    let parsed: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(canonical(&parsed), text);
    assert!(!text.contains('.'), "no floats in reports");
}

#[test]
fn inline_groups_roundtrip() {
    let g = preset("D8").unwrap();
    let gj = GroupJson::from_group(&g);
    let back = gj.to_group(1000).unwrap();
    assert!(back.same_as(&g));
    let m = dual(&regular_module(&g, Prime::new(3).unwrap()));
    let mut mj = ModuleJson::from_module(&m);
    mj.group = green_workbench::json::GroupRef::Inline(gj);
    let text = serde_json::to_string(&mj.with_provenance("dual of the regular module")).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    std::fs::write(&path, text).unwrap();
    let read = read_module(&path, 1000).unwrap();
    assert_eq!(read.generator_matrices(), m.generator_matrices());
}

#[test]
fn malformed_files_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    let cases = [
        (r#"{"group": "S3", "p": 2, "dim": 1, "generators": []}"#, "generators"),
        (r#"{"group": "S3", "p": 6, "dim": 1, "generators": []}"#, "`p`"),
        (r#"{"group": "Q16", "p": 2, "dim": 1, "generators": []}"#, "`group`"),
        (r#"{"group": "C2", "p": 2, "dim": 2, "generators": [{"p": 2, "rows": 2, "cols": 2, "entries": [[1, 0]]}]}"#, "entries"),
        (r#"{"group": "C2", "p": 2, "dim": 1, "generators": [], "colour": 1}"#, "colour"),
    ];
    for (text, field) in cases {
        std::fs::write(&path, text).unwrap();
        let err = format!("{:#}", read_module(&path, 1000).unwrap_err());
        assert!(err.contains(field), "{text}: {err}");
    }
    let k = trivial_module(&preset("C2").unwrap(), Prime::new(2).unwrap());
    assert_eq!(ModuleJson::from_module(&k).to_module(1000).unwrap(), k);
}
