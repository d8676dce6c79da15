use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn specind(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_specind")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = specind(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn spectrum_of_petersen() {
    let v = json(&["spectrum", "--family", "petersen"]);
    assert_eq!(v["theta"], serde_json::json!([3, 1, -2]));
    assert_eq!(v["mult"], serde_json::json!([1, 5, 4]));
    assert_eq!(v["d"], 2);
}

#[test]
fn spectrum_from_fixture_and_file() {
    let o = specind(&["spectrum", "--in", "nauru", "--format", "text"]);
    assert_eq!(stdout(&o), "n = 24, d = 6\n{3^1, 2^6, 1^3, 0^4, -1^3, -2^6, -3^1}\n");

    let dir = scratch("edges");
    let path = dir.join("c4.txt");
    std::fs::write(&path, "0 1\n1 2\n2 3\n3 0\n").unwrap();
    let v = json(&["spectrum", "--in", path.to_str().unwrap()]);
    assert_eq!(v["theta"], serde_json::json!([2, 0, -2]));
}

#[test]
fn bounds_with_exact() {
    let v = json(&["bounds", "--family", "odd:6", "--k", "4", "--exact"]);
    assert_eq!(v["best_floor"], 11);
    assert_eq!(v["exact"]["alpha_k"], 11);
    assert_eq!(v["exact"]["witness"].as_array().unwrap().len(), 11);
}

#[test]
fn bounds_csv_has_one_header_for_all_k() {
    let o = specind(&["bounds", "--family", "cycle:7", "--k", "all", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.matches("method,k,").count(), 1);
    assert!(text.lines().any(|l| l.starts_with("hoffman,1,")));
    assert!(text.lines().any(|l| l.contains(",2,") && l.starts_with("ratio_general")));
}

#[test]
fn classify_verdicts() {
    let v = json(&["classify", "--family", "kneser:6,2", "--k", "1"]);
    assert_eq!(v["is_tight_ch"], true);
    assert_eq!(v["inertia_value"], 5);
    let v = json(&["classify", "--family", "odd:5", "--k", "3"]);
    assert_eq!(v["bounds_equal"], true);
    assert_eq!(v["is_ch"], false);
    assert_eq!(v["is_tight_ch"], false);
    assert_eq!(v["exact"], 7);
    let v = json(&["classify", "--family", "odd:5", "--k", "3", "--no-exact"]);
    assert!(v["exact"].is_null());
}

#[test]
fn table_rows_match() {
    let o = specind(&["table", "t1", "--rows", "complete5,c5", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 7);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",match")));
}

#[test]
fn output_is_byte_stable() {
    let a = specind(&["table", "all", "--jobs", "1"]);
    let b = specind(&["table", "all"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = specind(&["classify", "--family", "prism:8", "--k", "all", "--format", "csv"]);
    let d = specind(&["classify", "--family", "prism:8", "--k", "all", "--format", "csv"]);
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn errors_exit_with_two() {
    for args in [
        &["bounds", "--family", "nope"][..],
        &["bounds", "--family", "cycle:5", "--k", "0"],
        &["table", "t9"],
        &["table", "t1", "--rows", "bogus"],
    ] {
        let o = specind(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("error: "), "{args:?}");
        assert!(o.stdout.is_empty());
    }

    let dir = scratch("disconnected");
    let path = dir.join("two.txt");
    std::fs::write(&path, "0 1\n2 3\n").unwrap();
    let o = specind(&["bounds", "--in", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("(DisconnectedGraph)"));
}

#[test]
fn table_mismatch_exits_with_one() {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures");
    let dir = scratch("fixtures");
    copy_dir(&root, &dir);
    let path = dir.join("tables/t1.json");
    let mut t: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    t["rows"][0]["expected"]["alpha"] = 2.into();
    std::fs::write(&path, serde_json::to_string(&t).unwrap()).unwrap();

    let o = Command::new(env!("CARGO_BIN_EXE_specind"))
        .args(["table", "t1", "--format", "csv"])
        .env("SPECIND_FIXTURES", &dir)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("t1,complete5,alpha,2,1,MISMATCH"));
}

#[test]
fn gen_round_trips_through_graph6() {
    let o = specind(&["gen", "--family", "petersen"]);
    let g6 = stdout(&o);
    let dir = scratch("g6");
    let path = dir.join("p.g6");
    std::fs::write(&path, &g6).unwrap();
    let v = json(&["spectrum", "--in", path.to_str().unwrap()]);
    assert_eq!(v["mult"], serde_json::json!([1, 5, 4]));
}

#[test]
fn dump_programs() {
    let o = specind(&["dump", "--family", "odd:5", "--k", "2", "--program", "minor"]);
    assert!(stdout(&o).starts_with("lp 5 2\n"));
    let o = specind(&["dump", "--family", "odd:5", "--k", "2", "--program", "sign"]);
    assert!(o.status.success());
    assert!(!stdout(&o).is_empty());
}

fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("specind-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn copy_dir(from: &Path, to: &Path) {
    std::fs::create_dir_all(to).unwrap();
    for e in std::fs::read_dir(from).unwrap() {
        let e = e.unwrap();
        let target = to.join(e.file_name());
        if e.file_type().unwrap().is_dir() {
            copy_dir(&e.path(), &target);
        } else {
            std::fs::copy(e.path(), target).unwrap();
        }
    }
}
