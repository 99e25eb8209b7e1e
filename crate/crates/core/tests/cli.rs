//! End-to-end checks of the `hecke-mult` command line.

use std::fs;
use std::path::Path;
use std::process::Command;

use modp_hecke::cli::run;
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let code = run(std::iter::once("hecke-mult").chain(args.iter().copied()), &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn dir_arg(dir: &Path) -> String {
    dir.to_str().unwrap().to_string()
}

#[test]
fn scan_eleven_mod_five() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir_arg(dir.path());
    let (code, out) = call(&["scan", "--p", "5", "--N", "11", "--cache-dir", &d]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let res = &v["results"][0];
    assert_eq!(res["status"], "computed");
    let reps = res["payload"]["reports"].as_array().unwrap();
    assert_eq!(reps.len(), 1);
    assert_eq!(reps[0]["factor"]["dim_t"], 1);
    assert_eq!(reps[0]["multiplicity_r"], "1");
    assert_eq!(reps[0]["gorenstein"], true);
    assert_eq!(reps[0]["eisenstein_flag"], true);
}

#[test]
fn scan_is_deterministic_and_cached() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir_arg(dir.path());
    let args = ["scan", "--p", "2,3", "--N", "11..23", "--cache-dir", &d, "--seed", "3"];
    let (c1, fresh) = call(&args);
    let (c2, cached) = call(&args);
    let mut parallel = args.to_vec();
    parallel.extend(["--workers", "4"]);
    let (c3, par) = call(&parallel);
    assert_eq!((c1, c2, c3), (0, 0, 0));
    assert_eq!(fresh, cached);
    assert_eq!(fresh, par);
    let (_, nocache) = call(&[
        "scan",
        "--p",
        "2,3",
        "--N",
        "11..23",
        "--no-cache",
        "--cache-dir",
        &d,
        "--seed",
        "3",
    ]);
    assert_eq!(fresh, nocache);
}

#[test]
fn pairs_with_p_dividing_level_are_skipped() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir_arg(dir.path());
    let (code, out) = call(&["scan", "--p", "11", "--N", "11", "--cache-dir", &d]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["results"][0]["status"], "skipped");
}

#[test]
fn csv_output_has_fixed_columns() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir_arg(dir.path());
    let path = dir.path().join("out.csv");
    let (code, out) = call(&[
        "scan",
        "--p",
        "5",
        "--N",
        "11",
        "--cache-dir",
        &d,
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let text = fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "p,N,group,factor,dimT,res_deg,dimF_socle,dimF_socle_p,r,ordinary,gorenstein,weight1_sig,eisenstein_flag"
    );
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(&row[..5], &["5", "11", "gamma0", "0", "1"]);
    assert_eq!(row[8], "1");
    assert!(lines.next().is_none());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(call(&["scan", "--p", "4", "--N", "11", "--no-cache"]).0, 2);
    assert_eq!(call(&["scan", "--p", "3", "--N", "9..2", "--no-cache"]).0, 2);
    assert_eq!(call(&["scan", "--p", "x", "--N", "11", "--no-cache"]).0, 2);
    assert_eq!(call(&["frobnicate"]).0, 2);
    assert_eq!(call(&["dieudonne", "verify-a1", "--p", "3"]).0, 2);
    assert_eq!(call(&["dieudonne", "points", "--p", "3", "--matrix", "1,0;0,0"]).0, 2);
}

#[test]
fn inspect_found_missing_and_corrupt() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir_arg(dir.path());
    assert_eq!(call(&["inspect", "--p", "5", "--N", "11", "--cache-dir", &d]).0, 4);
    assert_eq!(call(&["scan", "--p", "5", "--N", "11", "--cache-dir", &d]).0, 0);
    let (code, text) = call(&["inspect", "--p", "5", "--N", "11", "--cache-dir", &d]);
    assert_eq!(code, 0);
    assert!(text.contains("factor 0"));
    assert!(text.contains("minimal polynomials"));
    let (code, json) = call(&["inspect", "--p", "5", "--N", "11", "--cache-dir", &d, "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&json).unwrap();
    assert!(v["checksum"].is_string());

    let (_, listing) = call(&["cache", "--cache-dir", &d, "ls"]);
    let name = listing.split('\t').next().unwrap().to_string();
    assert!(listing.contains("Valid"));
    let path = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .find(|p| p.extension().is_some_and(|e| e == "json"))
        .unwrap();
    let tampered = fs::read_to_string(&path)
        .unwrap()
        .replacen("\"dim_t\":1", "\"dim_t\":2", 1);
    fs::write(&path, tampered).unwrap();
    assert_eq!(call(&["inspect", &name, "--cache-dir", &d]).0, 3);
    let (_, listing) = call(&["cache", "--cache-dir", &d, "ls"]);
    assert!(listing.contains("Corrupt"));

    // A scan recomputes over the corrupt entry.
    assert_eq!(call(&["scan", "--p", "5", "--N", "11", "--cache-dir", &d]).0, 0);
    assert_eq!(call(&["inspect", &name, "--cache-dir", &d]).0, 0);
}

#[test]
fn cache_maintenance() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir_arg(dir.path());
    assert_eq!(call(&["scan", "--p", "3", "--N", "11,13", "--cache-dir", &d]).0, 0);
    let (_, listing) = call(&["cache", "--cache-dir", &d, "ls"]);
    let names: Vec<String> = listing
        .lines()
        .map(|l| l.split('\t').next().unwrap().to_string())
        .collect();
    assert_eq!(names.len(), 2);
    fs::write(dir.path().join("junk.json"), "not json").unwrap();
    let (code, gc) = call(&["cache", "--cache-dir", &d, "gc"]);
    assert_eq!(code, 0);
    assert!(gc.contains("junk"));
    assert_eq!(call(&["cache", "--cache-dir", &d, "rm", &names[0]]).0, 0);
    assert_eq!(call(&["cache", "--cache-dir", &d, "rm", &names[0]]).0, 4);
    let (code, out) = call(&["cache", "--cache-dir", &d, "rm", "--all"]);
    assert_eq!(code, 0);
    assert!(out.contains("removed 1"));
    assert_eq!(call(&["cache", "--cache-dir", &d, "ls"]).1, "");
}

#[test]
fn dieudonne_subcommands() {
    let (code, out) = call(&[
        "dieudonne",
        "verify-a1",
        "--random",
        "100",
        "--n",
        "4",
        "--p",
        "3",
        "--seed",
        "7",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["passed"], 100);

    let (code, out) = call(&["dieudonne", "witt", "--p", "3", "--k", "2"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["kernel_count"], 9);

    let (code, out) = call(&["dieudonne", "prop-a2", "--p", "2", "--n", "2", "--unit", "3"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["v_identity_on_quotient"], true);
    assert_eq!(v["v_identity_on_m"], false);

    let (code, out) = call(&["dieudonne", "verify-a1", "--p", "2", "--matrix", "0,1;1,1"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["conjugate"], true);

    assert_eq!(call(&["dieudonne", "points", "--p", "5", "--matrix", "1,0;0,2"]).0, 0);
    assert_eq!(
        call(&["dieudonne", "prop-a2", "--p", "3", "--n", "2", "--unit", "2"]).0,
        2
    );
}

#[test]
fn binary_reports_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bin = env!("CARGO_BIN_EXE_hecke-mult");
    let status = Command::new(bin)
        .args(["inspect", "--p", "5", "--N", "11"])
        .env("HECKE_MULT_CACHE", dir.path())
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&status.stderr).contains("error"));
    let ok = Command::new(bin)
        .args(["scan", "--p", "5", "--N", "11"])
        .env("HECKE_MULT_CACHE", dir.path())
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(fs::read_dir(dir.path()).unwrap().count() >= 1);
}
