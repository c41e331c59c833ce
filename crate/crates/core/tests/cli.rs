use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

use waring_deborder::algebra::{int, HomoPoly};
use waring_deborder::cli::Document;

fn waring(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_waring"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is one JSON value")
}

fn diagnostic(o: &Output) -> Value {
    let text = String::from_utf8_lossy(&o.stderr);
    serde_json::from_str(text.lines().last().expect("a diagnostics line")).expect("JSON diagnostics")
}

fn gen(dir: &Path, extra: &[&str]) -> (PathBuf, PathBuf) {
    let mut args = vec!["gen"];
    args.extend_from_slice(extra);
    args.extend_from_slice(&["--out-border", "b.json", "--out-target", "f.json"]);
    let o = waring(dir, &args);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    (dir.join("b.json"), dir.join("f.json"))
}

fn write_polynomial(path: &Path, p: HomoPoly<waring_deborder::algebra::Rational>) {
    fs::write(path, Document::Polynomial(p).to_json_string()).unwrap();
}

#[test]
fn tangent_pipeline() {
    let dir = TempDir::new().unwrap();
    let (b, f) = gen(dir.path(), &["--family", "tangent", "--d", "4"]);
    match Document::parse(&fs::read_to_string(&f).unwrap()).unwrap() {
        Document::Polynomial(p) => assert_eq!(p, HomoPoly::monomial(&[3, 1], int(1))),
        d => panic!("unexpected {}", d.kind()),
    }
    let o = waring(dir.path(), &["verify", "--type", "border", "--decomp", "b.json", "--target", "f.json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["q"], 1);

    let o = waring(
        dir.path(),
        &["deborder", "--border", b.to_str().unwrap(), "--target", f.to_str().unwrap(), "--out", "w.json"],
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let report = stdout_json(&o);
    assert_eq!(report["kind"], "report");
    let payload = &report["payload"];
    assert_eq!(payload["achieved_rank"], 4);
    assert_eq!(payload["verified"], true);
    assert_eq!(payload["flags"]["seed"], 0);
    assert_eq!(payload["flags"]["base_threshold"], 4);
    assert_eq!(payload["flags"]["strengthened"], false);

    let o = waring(dir.path(), &["verify", "--type", "waring", "--decomp", "w.json", "--target", "f.json"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn tangent_cubic_report_file() {
    let dir = TempDir::new().unwrap();
    gen(dir.path(), &["--family", "tangent", "--d", "3"]);
    let o = waring(
        dir.path(),
        &["deborder", "--border", "b.json", "--target", "f.json", "--out", "w.json", "--report", "r.json", "--seed", "5"],
    );
    assert_eq!(code(&o), 0);
    let report = match Document::parse(&fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap() {
        Document::Report(v) => v,
        d => panic!("unexpected {}", d.kind()),
    };
    assert_eq!(report["achieved_rank"], 3);
    assert_eq!(report["paper_bound"], "54242");
    assert_eq!(report["flags"]["seed"], 5);
}

#[test]
fn generation_is_deterministic() {
    let a = TempDir::new().unwrap();
    let b = TempDir::new().unwrap();
    for dir in [&a, &b] {
        gen(dir.path(), &["--family", "multibase", "--d", "5", "--seed", "7"]);
    }
    for name in ["b.json", "f.json"] {
        assert_eq!(fs::read(a.path().join(name)).unwrap(), fs::read(b.path().join(name)).unwrap());
    }
    for dir in [&a, &b] {
        gen(dir.path(), &["--family", "random", "--d", "4", "--seed", "11", "--nvars", "3"]);
    }
    assert_eq!(fs::read(a.path().join("b.json")).unwrap(), fs::read(b.path().join("b.json")).unwrap());
}

#[test]
fn osculating_certificate() {
    let dir = TempDir::new().unwrap();
    let (b, _) = gen(dir.path(), &["--family", "osculating", "--d", "5", "--j", "2"]);
    match Document::parse(&fs::read_to_string(b).unwrap()).unwrap() {
        Document::Border(b) => assert_eq!(b.rank(), 3),
        d => panic!("unexpected {}", d.kind()),
    }
    let o = waring(dir.path(), &["verify", "--type", "border", "--decomp", "b.json", "--target", "f.json"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn invalid_family_parameters() {
    let dir = TempDir::new().unwrap();
    let o = waring(dir.path(), &["gen", "--family", "osculating", "--d", "3", "--j", "4"]);
    assert_eq!(code(&o), 2);
    let o = waring(dir.path(), &["gen", "--family", "tangent", "--d", "1"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn corrupted_json_is_malformed() {
    let dir = TempDir::new().unwrap();
    gen(dir.path(), &["--family", "tangent", "--d", "3"]);
    let text = fs::read_to_string(dir.path().join("b.json")).unwrap();
    fs::write(dir.path().join("b.json"), &text[..text.len() / 2]).unwrap();
    let o = waring(dir.path(), &["deborder", "--border", "b.json", "--target", "f.json", "--out", "w.json"]);
    assert_eq!(code(&o), 2);
    assert!(diagnostic(&o)["message"].as_str().unwrap().contains("invalid JSON"));
    let o = waring(dir.path(), &["deborder", "--border", "missing.json", "--target", "f.json", "--out", "w.json"]);
    assert_eq!(code(&o), 2);
    // a polynomial where a border decomposition is expected
    let o = waring(dir.path(), &["deborder", "--border", "f.json", "--target", "f.json", "--out", "w.json"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn pole_and_mismatch_witnesses() {
    let dir = TempDir::new().unwrap();
    gen(dir.path(), &["--family", "tangent", "--d", "3"]);
    // drop the second summand: (1/(3ε))(x+εy)³ alone has a pole
    let mut doc: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("b.json")).unwrap()).unwrap();
    doc["payload"]["summands"].as_array_mut().unwrap().pop();
    fs::write(dir.path().join("pole.json"), serde_json::to_string(&doc).unwrap()).unwrap();

    let o = waring(dir.path(), &["verify", "--type", "border", "--decomp", "pole.json", "--target", "f.json"]);
    assert_eq!(code(&o), 1);
    let w = diagnostic(&o)["witness"].as_str().unwrap().to_string();
    assert!(w.contains("pole of order 1"), "{w}");

    let o = waring(dir.path(), &["deborder", "--border", "pole.json", "--target", "f.json", "--out", "w.json"]);
    assert_eq!(code(&o), 1);
    assert!(diagnostic(&o)["witness"].as_str().unwrap().contains("pole"));
    assert!(!dir.path().join("w.json").exists());

    write_polynomial(&dir.path().join("wrong.json"), HomoPoly::monomial(&[3, 0], int(1)));
    let o = waring(dir.path(), &["verify", "--type", "border", "--decomp", "b.json", "--target", "wrong.json"]);
    assert_eq!(code(&o), 1);
    assert!(diagnostic(&o)["witness"].is_string());

    waring(dir.path(), &["deborder", "--border", "b.json", "--target", "f.json", "--out", "w.json"]);
    let o = waring(dir.path(), &["verify", "--type", "waring", "--decomp", "w.json", "--target", "wrong.json"]);
    assert_eq!(code(&o), 1);
    assert!(diagnostic(&o)["witness"].is_string());
}

#[test]
fn oracle_command() {
    let dir = TempDir::new().unwrap();
    write_polynomial(&dir.path().join("x2y.json"), HomoPoly::monomial(&[2, 1], int(1)));
    let o = waring(dir.path(), &["oracle", "--target", "x2y.json", "--binary"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!((v["wr"].as_u64(), v["bwr"].as_u64()), (Some(3), Some(2)));

    write_polynomial(&dir.path().join("x5.json"), HomoPoly::monomial(&[5, 0], int(1)));
    let v = stdout_json(&waring(dir.path(), &["oracle", "--target", "x5.json", "--binary"]));
    assert_eq!((v["wr"].as_u64(), v["bwr"].as_u64()), (Some(1), Some(1)));

    write_polynomial(&dir.path().join("xyz.json"), HomoPoly::monomial(&[1, 1, 1], int(1)));
    let o = waring(dir.path(), &["oracle", "--target", "xyz.json", "--binary"]);
    assert_eq!(code(&o), 2);
    let o = waring(dir.path(), &["oracle", "--target", "xyz.json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["lower_bound"], 3);
}

#[test]
fn bound_command() {
    let dir = TempDir::new().unwrap();
    let o = waring(dir.path(), &["bound", "--d", "3", "--r", "2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["paper_bound"], "54242");
    let o = waring(dir.path(), &["bound", "--d", "5", "--r", "4"]);
    assert_eq!(stdout_json(&o)["paper_bound"], (5u64 << 40).to_string());
}
