use std::process::{Command, Output};

fn hexglue(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hexglue")).args(args).env_remove("HEXGLUE_CACHE_DIR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn enumerate_prints_counts() {
    let o = hexglue(&["enumerate", "--n", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains('6'));
    let o = hexglue(&["enumerate", "--n", "3", "--stage", "trees"]);
    assert!(stdout(&o).contains('3'));
}

#[test]
fn enumerate_writes_batches() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("n4.jsonl");
    let o = hexglue(&["enumerate", "--n", "4", "-o", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 11);
}

#[test]
fn polygon_exit_codes() {
    let o = hexglue(&["polygon", "--angles", "2,2,1,1", "--sides", "1,1,1,4"]);
    assert!(o.status.success(), "{o:?}");
    let o = hexglue(&["polygon", "--angles", "1,1,1", "--sides", "1,1,1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("none"));
    let o = hexglue(&["polygon", "--angles", "2,2,2", "--sides", "1,1,1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_input_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"n\": 1, \"pairs\": [[[0, 0], [4, 1]]]}\n").unwrap();
    let o = hexglue(&["classify", "-i", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = hexglue(&["classify", "-i", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn realize_exports_meshes() {
    let dir = tempfile::tempdir().unwrap();
    let fixture = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/tests/fixtures/prism.json");
    let prefix = dir.path().join("prism");
    let o = hexglue(&["realize", "-i", fixture, "--obj", prefix.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("\"vi\""));
    let obj: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(obj.len(), 1);
}

#[test]
fn net_svg() {
    let dir = tempfile::tempdir().unwrap();
    let fixture = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/tests/fixtures/octahedron.json");
    let svg = dir.path().join("oct.svg");
    let o = hexglue(&["net", "-i", fixture, "--svg", svg.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg") || text.starts_with("<?xml"));
    assert_eq!(text.matches("<polygon").count(), 4);
}
