use std::path::{Path, PathBuf};
use std::process::Command;

use sha2::{Digest, Sha256};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

/// Runs in process; returns (exit code, stdout, stderr).
fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("knotword").chain(args.iter().copied());
    let code = knotword::cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json_block(stdout: &str) -> serde_json::Value {
    let start = stdout.find("```json\n").unwrap() + 8;
    let end = stdout[start..].find("```").unwrap() + start;
    serde_json::from_str(&stdout[start..end]).unwrap()
}

#[test]
fn reduce_exit_codes() {
    let (code, out, _) = run(&["reduce", "SRSR"]);
    assert_eq!(code, 0);
    assert!(out.starts_with(knotword::cli::VERSION_LINE));
    assert!(out.contains("verdict: omega-reducible"));
    assert_eq!(run(&["reduce", "SSSS"]).0, 1);
    assert_eq!(run(&["reduce", "--partial", "SRS"]).0, 0);
    assert_eq!(run(&["reduce", "--partial", "SSS"]).0, 1);
    assert_eq!(run(&["reduce", "--partial", "SS"]).0, 2);
    assert_eq!(run(&["reduce", "SXR"]).0, 2);
    assert_eq!(run(&["reduce"]).0, 2);
    assert_eq!(run(&["reduce", "--cyclic", "--partial", "SRS"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
    assert_eq!(run(&["--version"]).0, 0);
}

#[test]
fn trace_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("t.json");
    let t = trace.to_str().unwrap();
    assert_eq!(run(&["reduce", "SP2RSRSP1SSRSS", "--trace-out", t]).0, 0);
    let (code, out, _) = run(&["reduce", "--replay", t]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("steps verified"));

    // a doctored step is caught
    let text = std::fs::read_to_string(&trace).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["trace"]["steps"][0]["site"]["start"] = serde_json::json!(99);
    std::fs::write(&trace, v.to_string()).unwrap();
    let (code, _, err) = run(&["reduce", "--replay", t]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error:"));
}

#[test]
fn partial_trace_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("p.json");
    let t = t.to_str().unwrap();
    assert_eq!(
        run(&["reduce", "--partial", "SSRSSSSRSSR", "--trace-out", t]).0,
        0
    );
    let (code, out, _) = run(&["reduce", "--replay", t]);
    assert_eq!(code, 0);
    assert!(out.contains("verdict: R-omega-reducible"));
}

#[test]
fn check_exit_codes() {
    let (code, out, _) = run(&["check", &fixture("fig4_paired.kw")]);
    assert_eq!(code, 0);
    assert_eq!(json_block(&out)["pass"], serde_json::json!(true));
    let (code, out, _) = run(&["check", &fixture("fig3a_meridian.kw")]);
    assert_eq!(code, 1);
    assert!(out.contains("witness: bubble B1 via M1"));
    assert_eq!(run(&["check", &fixture("violates_5.kw")]).0, 1);
    for bad in [
        "errors/not_json.kw",
        "errors/unknown_saddle.kw",
        "errors/side_conflict.kw",
        "errors/absent.kw",
    ] {
        assert_eq!(run(&["check", &fixture(bad)]).0, 2, "{bad}");
    }
}

#[test]
fn check_emits_virtual_diagrams() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert_eq!(
        run(&["check", &fixture("fig8_stacked.kw"), "--emit-virtual", d]).0,
        0
    );
    let dot = std::fs::read_to_string(dir.path().join("plus_C.dot")).unwrap();
    assert!(dot.starts_with("graph"));
    assert!(dir.path().join("minus_M4.dot").exists());
}

#[test]
fn euler_exit_codes() {
    let (code, out, _) = run(&["euler", &fixture("torus_r8_1.kw")]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(json_block(&out)["chi"], serde_json::json!(0));
    assert_eq!(run(&["euler", &fixture("meridional_clean.kw")]).0, 2);
    assert_eq!(run(&["euler", &fixture("fig8_stacked.kw")]).0, 2);
}

#[test]
fn oracle_exit_codes() {
    assert_eq!(run(&["oracle", "SRSRSSSRSS"]).0, 0);
    assert_eq!(run(&["oracle", "SSSSSS"]).0, 1);
    assert_eq!(run(&["oracle", "--partial", "RSRSRSSRS"]).0, 0);
    assert_eq!(run(&["oracle", "--bound", "4", "SRSRSR"]).0, 2);
}

fn read_dir_sorted(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().to_string_lossy().into_owned(),
                std::fs::read(e.path()).unwrap(),
            )
        })
        .collect();
    files.sort();
    files
}

#[test]
fn enumerate_is_deterministic_and_hashed() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let (code, out_a, _) = run(&[
        "enumerate",
        "--r",
        "8",
        "--jobs",
        "1",
        "--out",
        a.path().to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let (_, out_b, _) = run(&[
        "enumerate",
        "--r",
        "8",
        "--jobs",
        "4",
        "--out",
        b.path().to_str().unwrap(),
    ]);
    let strip = |s: &str| {
        s.lines()
            .filter(|l| !l.contains("files written to"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(strip(&out_a), strip(&out_b));
    assert_eq!(read_dir_sorted(a.path()), read_dir_sorted(b.path()));

    let manifest: serde_json::Value =
        serde_json::from_slice(&std::fs::read(a.path().join("manifest.json")).unwrap()).unwrap();
    let files = manifest["files"].as_array().unwrap();
    assert_eq!(files.len(), 2 * 8 + 1);
    for f in files {
        let body = std::fs::read(a.path().join(f["path"].as_str().unwrap())).unwrap();
        assert_eq!(
            f["sha256"].as_str().unwrap(),
            hex::encode(Sha256::digest(&body))
        );
    }
    // exported presentations load and pass
    let first = a.path().join("r8_config_001.kw");
    assert_eq!(run(&["check", first.to_str().unwrap()]).0, 0);
}

#[test]
fn enumerate_rejects_bad_r() {
    assert_eq!(run(&["enumerate", "--r", "5"]).0, 2);
    assert_eq!(run(&["enumerate", "--r", "2"]).0, 2);
}

#[test]
fn binary_honours_jobs_variable_and_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_knotword");
    let one = Command::new(bin)
        .args(["enumerate", "--r", "6"])
        .env("KNOTWORD_JOBS", "1")
        .output()
        .unwrap();
    let two = Command::new(bin)
        .args(["enumerate", "--r", "6"])
        .env("KNOTWORD_JOBS", "3")
        .output()
        .unwrap();
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, two.stdout);
    let bad = Command::new(bin)
        .args(["enumerate", "--r", "6"])
        .env("KNOTWORD_JOBS", "many")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let irreducible = Command::new(bin).args(["reduce", "SS"]).output().unwrap();
    assert_eq!(irreducible.status.code(), Some(1));
}
