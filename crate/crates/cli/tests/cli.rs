use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn normtrace(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_normtrace"))
        .args(args)
        .env("NORMTRACE_CACHE_DIR", cache)
        .env_remove("NORMTRACE_THREADS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

const GHW: &[&str] =
    &["ghw", "--q", "3", "--s", "2", "--u", "4", "--monomials", "deg<=4", "--r", "3", "--format", "json"];

#[test]
fn ghw_reports_value_and_witness() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&normtrace(dir.path(), GHW));
    assert_eq!(v["schema"], 1);
    assert_eq!(v["r"], 3);
    assert_eq!(v["d_r"], 17);
    assert_eq!(v["method"], "exhaustive");
    assert_eq!(v["exact"], true);
    let mut w: Vec<String> = v["witness"].as_array().unwrap().iter().map(|x| x.as_str().unwrap().into()).collect();
    w.sort();
    assert_eq!(w, ["x2y1", "x2y2", "x3y1"]);
}

#[test]
fn quantum_pair_is_impure() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["quantum", "--q", "5", "--s", "2", "--u", "3", "--lambda1", "8", "--lambda2", "6"];
    let out = normtrace(dir.path(), &args);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("[[65,1,57/4]]_25* impure=true"), "{text}");
}

#[test]
fn invalid_u_exits_with_validation_code() {
    let dir = tempfile::tempdir().unwrap();
    let out = normtrace(dir.path(), &["curve", "--q", "7", "--s", "2", "--u", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("does not divide"));
}

#[test]
fn bad_monomial_spec_and_unknown_flag_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = normtrace(dir.path(), &["ghw", "--q", "3", "--s", "2", "--u", "2", "--monomials", "deg<4", "--r", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = normtrace(dir.path(), &["curve", "--q", "3", "--s", "2", "--u", "2", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oversized_field_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let out = normtrace(dir.path(), &["field", "--q", "2", "--s", "17"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oracle_over_budget_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["ghw", "--q", "5", "--s", "2", "--u", "3", "--monomials", "box", "--r", "2", "--method", "oracle"];
    let out = normtrace(dir.path(), &args);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn oracle_method_matches_engine() {
    let dir = tempfile::tempdir().unwrap();
    let base = ["ghw", "--q", "3", "--s", "2", "--u", "2", "--monomials", "deg<=1", "--hierarchy", "--format", "json"];
    let engine = json(&normtrace(dir.path(), &base));
    let mut oracle_args = base.to_vec();
    oracle_args.extend(["--method", "oracle", "--no-cache"]);
    let oracle = json(&normtrace(dir.path(), &oracle_args));
    assert_eq!(engine["hierarchy"], oracle["hierarchy"]);
    assert_eq!(oracle["results"][0]["method"], "oracle");
}

#[test]
fn fast_paths_agree_with_exhaustive() {
    let dir = tempfile::tempdir().unwrap();
    for (u, method) in [("2", "fastpath"), ("4", "maxcase")] {
        let args =
            ["ghw", "--q", "3", "--s", "2", "--u", u, "--monomials", "deg<=3", "--hierarchy", "--format", "json"];
        let plain = json(&normtrace(dir.path(), &args));
        let mut fast = args.to_vec();
        fast.extend(["--method", method]);
        let fast = json(&normtrace(dir.path(), &fast));
        assert_eq!(plain["hierarchy"], fast["hierarchy"], "u = {u}");
    }
}

#[test]
fn cache_hit_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let first = normtrace(dir.path(), GHW);
    let second = normtrace(dir.path(), GHW);
    assert_eq!(first.stdout, second.stdout);
    assert!(String::from_utf8_lossy(&second.stderr).contains("cache: hit"));
    let uncached = normtrace(dir.path(), &[GHW, &["--no-cache"]].concat());
    assert_eq!(first.stdout, uncached.stdout);
    assert!(!String::from_utf8_lossy(&uncached.stderr).contains("cache: hit"));
}

#[test]
fn modulus_changes_the_cache_key() {
    let dir = tempfile::tempdir().unwrap();
    normtrace(dir.path(), GHW);
    // t^2 + t + 2 is another irreducible quadratic over GF(3).
    let out = normtrace(dir.path(), &[GHW, &["--modulus", "2,1,1"]].concat());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(!String::from_utf8_lossy(&out.stderr).contains("cache: hit"));
    assert_eq!(json(&out)["d_r"], 17);
}

#[test]
fn corrupt_cache_entry_is_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let first = normtrace(dir.path(), GHW);
    let entries: Vec<_> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(entries.len(), 1);
    fs::write(&entries[0], b"{\"truncated\":").unwrap();
    let again = normtrace(dir.path(), GHW);
    assert!(again.status.success());
    assert_eq!(first.stdout, again.stdout);
    assert!(String::from_utf8_lossy(&again.stderr).contains("corrupt"));
    let third = normtrace(dir.path(), GHW);
    assert!(String::from_utf8_lossy(&third.stderr).contains("cache: hit"));
}

#[test]
fn output_is_independent_of_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "ghw",
        "--q",
        "3",
        "--s",
        "2",
        "--u",
        "2",
        "--monomials",
        "deg<=3",
        "--hierarchy",
        "--format",
        "json",
        "--no-cache",
    ];
    let one = normtrace(dir.path(), &[&args[..], &["--threads", "1"]].concat());
    let four = normtrace(dir.path(), &[&args[..], &["--threads", "4"]].concat());
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn threads_flag_beats_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_normtrace"))
        .args(["field", "--q", "4", "--s", "2", "--threads", "1"])
        .env("NORMTRACE_THREADS", "not-a-number")
        .env("NORMTRACE_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn quantum_table_csv_has_header_and_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = normtrace(dir.path(), &["quantum-table", "--preset", "q3s2u2", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "lambda1,lambda2,n,k,delta_z,delta_x,impure,d1_C1,d1_C2perp,exact,method");
    assert_eq!(lines.next().unwrap(), "2,0,15,1,13,2,false,13,2,true,exhaustive");
    assert_eq!(text.lines().count(), 17);
    assert!(!text.contains('\r'));
}

#[test]
fn quantum_table_json_carries_notes() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&normtrace(dir.path(), &["quantum-table", "--preset", "q5s2u3", "--format", "json"]));
    assert_eq!(v["schema"], 1);
    assert_eq!(v["method"], "exhaustive");
    assert!(v["purity_note"].as_str().unwrap().contains("strictly exceeds"));
    let rows = v["tables"][0]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 17);
    assert_eq!(rows[2]["parameters"], "[[65,1,57/4]]_25*");
    assert!(rows.iter().all(|r| r["exact"] == true));
}

#[test]
fn rghw_by_thresholds_and_sets_agree() {
    let dir = tempfile::tempdir().unwrap();
    let by_lambda = json(&normtrace(
        dir.path(),
        &["rghw", "--q", "5", "--s", "2", "--u", "3", "--lambda1", "8", "--lambda2", "6", "--format", "json"],
    ));
    let by_sets = json(&normtrace(
        dir.path(),
        &[
            "rghw",
            "--q",
            "5",
            "--s",
            "2",
            "--u",
            "3",
            "--m1",
            "list:1,y1,x1,y2,x1y1",
            "--m2",
            "list:1,y1,x1,y2",
            "--format",
            "json",
        ],
    ));
    assert_eq!(by_lambda["M_r"], 57);
    assert_eq!(by_sets["M_r"], 57);
}

#[test]
fn code_dual_dimensions() {
    let dir = tempfile::tempdir().unwrap();
    let base = ["code", "--q", "5", "--s", "2", "--u", "3", "--monomials", "list:1,y1,x1,y2", "--format", "json"];
    let primal = json(&normtrace(dir.path(), &base));
    assert_eq!((primal["k"].as_u64(), primal["d1"].as_u64()), (Some(4), Some(59)));
    let dual = json(&normtrace(dir.path(), &[&base[..], &["--dual"]].concat()));
    assert_eq!((dual["k"].as_u64(), dual["d1"].as_u64()), (Some(61), Some(3)));
    assert_eq!(dual["twist"].as_array().unwrap().len(), 65);
}

#[test]
fn emitted_generators_have_the_right_shape() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&normtrace(
        dir.path(),
        &["code", "--q", "2", "--s", "2", "--u", "1", "--monomials", "box", "--emit-generators", "--format", "json"],
    ));
    let rows = v["generators"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r.as_array().unwrap().len() == 4));
}

#[test]
fn verify_passes_on_a_small_curve() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&normtrace(dir.path(), &["verify", "--q", "2", "--s", "2", "--u", "3", "--format", "json"]));
    assert_eq!(v["passed"], true);
    assert!(v["checks"].as_u64().unwrap() > 0);
}

#[test]
fn csv_is_refused_for_plain_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out = normtrace(dir.path(), &["field", "--q", "3", "--s", "2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_thread_environment_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_normtrace"))
        .args(["field", "--q", "4", "--s", "2"])
        .env("NORMTRACE_THREADS", "not-a-number")
        .env("NORMTRACE_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
