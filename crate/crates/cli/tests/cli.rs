use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn kbh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kbh")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn alexander_of_fixtures() {
    let cases = [
        ("unknot.tangle", "1"),
        ("trefoil.tangle", "t^-1 - 1 + t"),
        ("8_17.tangle", "-t^-3 + 4*t^-2 - 8*t^-1 + 11 - 8*t + 4*t^2 - t^3"),
    ];
    for (file, expected) in cases {
        let o = kbh(&["alexander", fixture(file).to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{file}");
        assert_eq!(stdout(&o).trim(), expected, "{file}");
    }
}

#[test]
fn alexander_json() {
    let o = kbh(&["alexander", fixture("trefoil.tangle").to_str().unwrap(), "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["alexander"], "t^-1 - 1 + t");
    assert_eq!(v["coefficients"]["-1"], "1");
    assert_eq!(v["coefficients"]["0"], "-1");
}

#[test]
fn alexander_rejects_links() {
    let o = kbh(&["alexander", fixture("borromean.tangle").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("3 strands"));
}

#[test]
fn zeta_of_a_single_crossing() {
    let dir = std::env::temp_dir().join(format!("kbh-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("x.tangle");
    std::fs::write(&file, "X+ a b\n").unwrap();
    let o = kbh(&["zeta", file.to_str().unwrap(), "--degree", "3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["lambda"]["a"], serde_json::json!([]));
    assert_eq!(v["lambda"]["b"], serde_json::json!([["1", ["a"]]]));
    assert_eq!(v["omega"], serde_json::json!([]));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn zeta_wheels_of_trefoil() {
    let o = kbh(&["zeta", fixture("trefoil.tangle").to_str().unwrap(), "--degree", "4", "--wheels-only"]);
    assert_eq!(o.status.code(), Some(0));
    // log(t − 1 + t⁻¹) at t = e^x is x² − 5x⁴/12
    assert_eq!(stdout(&o).trim(), "(11) - 5/12*(1111)");
}

#[test]
fn zeta_show_truncates() {
    let path = fixture("trefoil.tangle");
    let o = kbh(&["zeta", path.to_str().unwrap(), "--degree", "4", "--show", "2", "--wheels-only"]);
    assert_eq!(stdout(&o).trim(), "(11)");
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(kbh(&["zeta", "/nonexistent.tangle"]).status.code(), Some(2));
    let path = fixture("unknot.tangle");
    assert_eq!(kbh(&["zeta", path.to_str().unwrap(), "--degree", "2", "--show", "3"]).status.code(), Some(2));
    assert_eq!(kbh(&["zeta", path.to_str().unwrap(), "--degree", "0"]).status.code(), Some(2));
    assert_eq!(kbh(&["frobnicate"]).status.code(), Some(2));
    let dir = std::env::temp_dir().join(format!("kbh-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.tangle");
    std::fs::write(&bad, "X+ a b\nsew a c d\n").unwrap();
    let o = kbh(&["zeta", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn selftest_passes() {
    let o = kbh(&["selftest", "--degree", "3", "--seed", "7", "--cases", "3"]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert!(out.contains("PASS conjugation relation (+,-)"));
    assert!(!out.contains("FAIL"));
}
