//! End-to-end tests of the binary: exit codes, JSON shapes, cache
//! determinism.

use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_kacmoody")
}

fn tmpdir(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_matrix(dir: &Path, name: &str, rows: &[&[i64]]) -> PathBuf {
    let path = dir.join(name);
    let value = serde_json::json!({ "matrix": rows });
    std::fs::write(&path, value.to_string()).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad json ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

#[test]
fn classify_examples() {
    let dir = tmpdir("classify");
    let a2 = write_matrix(&dir, "a2.json", &[&[2, -1], &[-1, 2]]);
    let out = run(&["classify", "--matrix", a2.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["type"], "finite");
    assert_eq!(v["label"], "A2");
    assert_eq!(v["autA"], 2);

    let aff = write_matrix(&dir, "aff.json", &[&[2, -2], &[-2, 2]]);
    let out = run(&["classify", "--matrix", aff.to_str().unwrap()]);
    let v = stdout_json(&out);
    assert_eq!(v["type"], "affine");
    assert_eq!(v["label"], "A1~1");
    assert_eq!(v["marks"], serde_json::json!(["1", "1"]));
    assert_eq!(v["epsilon"], 0);

    let hyp = write_matrix(&dir, "hyp.json", &[&[2, -3], &[-3, 2]]);
    let out = run(&["classify", "--matrix", hyp.to_str().unwrap()]);
    let v = stdout_json(&out);
    assert_eq!(v["type"], "indefinite");
}

#[test]
fn invalid_matrix_exits_2_with_error_name() {
    let dir = tmpdir("invalid");
    let bad = write_matrix(&dir, "bad.json", &[&[2, 1], &[-1, 2]]);
    let out = run(&["classify", "--matrix", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("PositiveOffDiagonal"), "stderr: {err}");

    let dec = write_matrix(&dir, "dec.json", &[&[2, -1, 0], &[-1, 2, 0], &[0, 0, 2]]);
    let out = run(&["classify", "--matrix", dec.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Decomposable"));
}

#[test]
fn moody_sweep_passes_and_der_reports_outer() {
    let dir = tmpdir("moody");
    let hyp = write_matrix(&dir, "hyp.json", &[&[2, -3], &[-3, 2]]);
    let out = run(&[
        "moody",
        "--matrix",
        hyp.to_str().unwrap(),
        "--height",
        "9",
        "--jobs",
        "2",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = stdout_json(&out);
    assert_eq!(v["pass"], true);
    assert!(v["lines"].as_array().unwrap().len() > 5);

    let a2 = write_matrix(&dir, "a2.json", &[&[2, -1], &[-1, 2]]);
    let out = run(&[
        "der",
        "--matrix",
        a2.to_str().unwrap(),
        "--height",
        "4",
        "--beta",
        "[-1,1]",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["dim"], 1);
    assert_eq!(v["outer"], 1);
}

#[test]
fn cap_too_small_exits_3() {
    let dir = tmpdir("cap");
    let a2 = write_matrix(&dir, "a2.json", &[&[2, -1], &[-1, 2]]);
    // Degree of height 3 under cap 4 needs 3 + 3 = 6.
    let out = run(&[
        "der",
        "--matrix",
        a2.to_str().unwrap(),
        "--height",
        "4",
        "--beta",
        "[2,1]",
    ]);
    assert_eq!(
        out.status.code(),
        Some(3),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    // Build with a cap below the tallest Serre relation.
    let tw = write_matrix(&dir, "tw.json", &[&[2, -4], &[-1, 2]]);
    let out = run(&["build", "--matrix", tw.to_str().unwrap(), "--height", "3"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn build_cache_is_byte_identical_and_loadable() {
    let dir = tmpdir("cache");
    let aff = write_matrix(&dir, "aff.json", &[&[2, -2], &[-2, 2]]);
    let cache_dir = dir.join("cache");
    let args = [
        "build",
        "--matrix",
        aff.to_str().unwrap(),
        "--height",
        "6",
        "--cache",
        cache_dir.to_str().unwrap(),
    ];
    let out = run(&args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let file = std::fs::read_dir(&cache_dir)
        .unwrap()
        .next()
        .unwrap()
        .unwrap()
        .path();
    let first = std::fs::read(&file).unwrap();
    // Rebuild: byte identical.
    let out = run(&args);
    assert_eq!(out.status.code(), Some(0));
    let second = std::fs::read(&file).unwrap();
    assert_eq!(first, second, "rebuild must be byte-identical");

    // A consumer command loads the cache.
    let out = run(&[
        "der",
        "--matrix",
        aff.to_str().unwrap(),
        "--height",
        "6",
        "--beta",
        "[1,1]",
        "--cache",
        cache_dir.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = stdout_json(&out);
    assert_eq!(v["dim"], 2);
    assert_eq!(v["outer"], 1);

    // Tampered version field: exit 5.
    let text = String::from_utf8(first).unwrap();
    std::fs::write(&file, text.replacen("\"version\": 1", "\"version\": 9", 1)).unwrap();
    let out = run(&[
        "der",
        "--matrix",
        aff.to_str().unwrap(),
        "--height",
        "6",
        "--beta",
        "[1,1]",
        "--cache",
        cache_dir.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(5),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn identities_sweep_and_single_case() {
    let out = run(&["identities", "--rmax", "5", "--sl2max", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["failures"], 0);

    let out = run(&["identities", "--r1", "2", "--k0", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["lhs"], "1/3");
}

#[test]
fn borel_and_h1_reports() {
    let dir = tmpdir("borel");
    let aff = write_matrix(&dir, "aff.json", &[&[2, -2], &[-2, 2]]);
    let out = run(&["borel", "--matrix", aff.to_str().unwrap(), "--height", "8"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = stdout_json(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["h_dim"], 3);
    assert_eq!(v["center_dim"], 1);
    let zero_line = &v["lines"][0];
    assert_eq!(zero_line["dim"], 5);

    let a2 = write_matrix(&dir, "a2.json", &[&[2, -1], &[-1, 2]]);
    let out = run(&["h1", "--matrix", a2.to_str().unwrap(), "--height", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["total"], 4);
}

#[test]
fn affine_check_command() {
    let dir = tmpdir("affine");
    let tw = write_matrix(&dir, "tw.json", &[&[2, -4], &[-1, 2]]);
    let out = run(&[
        "affine",
        "--matrix",
        tw.to_str().unwrap(),
        "--height",
        "13",
        "--k",
        "1",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = stdout_json(&out);
    assert_eq!(v["pass"], true);
    // Two lines: delta (outer 0) and 2 delta (outer 1).
    let lines = v["lines"].as_array().unwrap();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["outer"], 0);
    assert_eq!(lines[1]["outer"], 1);
}
