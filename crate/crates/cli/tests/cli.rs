use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use sha2::{Digest, Sha256};

fn polytc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polytc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn code_from_lengths() {
    let o = polytc(&["code", "1,1,1,1,1,1,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "<765>");
    let o = polytc(&["code", "1,1,4,4,4"]);
    assert_eq!(stdout(&o).trim(), "<521>");
    let o = polytc(&["code", "--lengths", "1,1,4,4,4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["code"], "<521>");
}

#[test]
fn non_generic_lengths_are_rejected() {
    let o = polytc(&["code", "1,1,1,1"]);
    assert_eq!(o.status.code(), Some(3));
    let err = stderr(&o);
    assert!(err.contains("non-generic"), "{err}");
    assert!(err.contains("{2,1}") || err.contains("{1,2}"), "{err}");
}

#[test]
fn certify_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let o = polytc(&["certify", "--code", "765", "--out", path(dir.path())]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("TC >= 8 (upper 9)"));
    let cert = dir.path().join("certs/765.json");
    assert!(cert.exists());
    assert!(dir.path().join("manifest.json").exists());
    let o = polytc(&["certify", "--verify", path(&cert)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("verified"));

    let index: serde_json::Value =
        serde_json::from_slice(&fs::read(dir.path().join("index.json")).unwrap()).unwrap();
    let want = hex::encode(Sha256::digest(fs::read(&cert).unwrap()));
    assert_eq!(index["certs"]["sha256"]["certs/765.json"], want.as_str());
}

#[test]
fn tampered_certificates_fail_verification() {
    let dir = tempfile::tempdir().unwrap();
    polytc(&["certify", "--code", "765", "--out", path(dir.path())]);
    let cert = dir.path().join("certs/765.json");
    let mut json: serde_json::Value = serde_json::from_slice(&fs::read(&cert).unwrap()).unwrap();

    let mut bumped = json.clone();
    bumped["product"]["R"] = serde_json::json!(bumped["product"]["R"].as_u64().unwrap() + 1);
    let p = dir.path().join("bumped.json");
    fs::write(&p, serde_json::to_vec(&bumped).unwrap()).unwrap();
    assert_eq!(
        polytc(&["certify", "--verify", path(&p)]).status.code(),
        Some(4)
    );

    json["psi"] = serde_json::json!(["1"]);
    let p = dir.path().join("psi.json");
    fs::write(&p, serde_json::to_vec(&json).unwrap()).unwrap();
    assert_eq!(
        polytc(&["certify", "--verify", path(&p)]).status.code(),
        Some(4)
    );

    let p = dir.path().join("junk.json");
    fs::write(&p, b"not json").unwrap();
    assert_eq!(
        polytc(&["certify", "--verify", path(&p)]).status.code(),
        Some(4)
    );
}

#[test]
fn torus_and_projective_abstain() {
    let dir = tempfile::tempdir().unwrap();
    let o = polytc(&["certify", "--code", "74321", "--out", path(dir.path())]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("torus: TC = n-2 = 5"));
    let o = polytc(&["certify", "--code", "7", "--out", path(dir.path())]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!dir.path().join("certs").exists());
}

#[test]
fn inconsistent_code_is_invalid_input() {
    let o = polytc(&["certify", "--code", "7521,763"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("{6,4,3}"), "{}", stderr(&o));
    assert_eq!(polytc(&["certify", "--code", "75x"]).status.code(), Some(3));
    assert_eq!(polytc(&["frobnicate"]).status.code(), Some(3));
}

#[test]
fn enumerate_writes_store_and_index() {
    let dir = tempfile::tempdir().unwrap();
    let o = polytc(&[
        "enumerate",
        "--n",
        "6",
        "--realize",
        "--out",
        path(dir.path()),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("count: 20"));
    let files: Vec<_> = fs::read_dir(dir.path().join("store/n=6"))
        .unwrap()
        .collect();
    assert_eq!(files.len(), 20);
    let index: serde_json::Value =
        serde_json::from_slice(&fs::read(dir.path().join("index.json")).unwrap()).unwrap();
    let section = &index["codes"]["n=6"];
    assert_eq!(section["count"], 20);
    for (rel, sha) in section["sha256"].as_object().unwrap() {
        let bytes = fs::read(dir.path().join(rel)).unwrap();
        assert_eq!(hex::encode(Sha256::digest(&bytes)), sha.as_str().unwrap());
        let rec: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
        assert_eq!(rec["manifest"], "manifest.json");
        assert_eq!(rec["lengths"].as_array().unwrap().len(), 6);
    }
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        polytc(&["enumerate", "--n", "5", "--out", path(d.path())]);
        polytc(&["certify", "--code", "7521,762", "--out", path(d.path())]);
    }
    assert_eq!(
        fs::read(a.path().join("index.json")).unwrap(),
        fs::read(b.path().join("index.json")).unwrap()
    );
    assert_eq!(
        fs::read(a.path().join("certs/7521_762.json")).unwrap(),
        fs::read(b.path().join("certs/7521_762.json")).unwrap()
    );
    let x = polytc(&["tables", "--big", "--format", "csv"]);
    let y = polytc(&["tables", "--big", "--format", "csv"]);
    assert_eq!(x.stdout, y.stdout);
}

#[test]
fn enumerate_range_is_enforced() {
    assert_eq!(
        polytc(&["enumerate", "--n", "9", "--out", "unused"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        polytc(&["enumerate", "--n", "3", "--out", "unused"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn certify_all_small_n() {
    let dir = tempfile::tempdir().unwrap();
    let o = polytc(&[
        "certify",
        "--all",
        "--n",
        "6",
        "--out",
        path(dir.path()),
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["total"], 20);
    let certified = v["certified"].as_u64().unwrap() as usize;
    assert_eq!(
        fs::read_dir(dir.path().join("certs")).unwrap().count(),
        certified
    );
    for entry in fs::read_dir(dir.path().join("certs")).unwrap() {
        let p = entry.unwrap().path();
        assert_eq!(
            polytc(&["certify", "--verify", path(&p)]).status.code(),
            Some(0),
            "{}",
            p.display()
        );
    }
}

#[test]
fn big_table_diff() {
    let o = polytc(&["tables", "--big", "--diff"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("300/300 cells match"));
}

#[test]
fn tt_table_diff() {
    let o = polytc(&["tables", "--tt", "--diff"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("27/27 rows verified"));
}

#[test]
fn betti_table() {
    let o = polytc(&["tables", "--betti", "6", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 20);
    assert!(rows.iter().all(|r| r.ends_with(",true")));
}
