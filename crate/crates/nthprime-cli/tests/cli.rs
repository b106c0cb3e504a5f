//! End-to-end tests of the `nthprime` binary: subcommands, output formats,
//! the segment-size environment variable, and the exit-code contract
//! (0 success, 1 domain error, 2 verification failure, 64 usage error).

use std::process::{Command, Output};

fn nthprime(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nthprime"))
        .args(args)
        .env_remove("NTHPRIME_SEGMENT_SIZE")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn nth_cramer_six_prints_thirteen() {
    let out = nthprime(&["nth", "6", "--algo", "cramer"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().next(), Some("13"));
}

#[test]
fn pi_hundred_prints_twenty_five() {
    let out = nthprime(&["pi", "100"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "25");
}

#[test]
fn bounds_six_prints_dusart_endpoints() {
    let out = nthprime(&["bounds", "6"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("L = 8.249745"), "got: {text}");
    assert!(text.contains("R = 14.249745"), "got: {text}");
    assert!(text.contains("B = "), "got: {text}");
}

#[test]
fn domain_errors_exit_one() {
    let out = nthprime(&["bounds", "5"]);
    assert_eq!(out.status.code(), Some(1));
    let out = nthprime(&["li", "1.5"]);
    assert_eq!(out.status.code(), Some(1));
    let out = nthprime(&["nth", "0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_sixty_four() {
    let out = nthprime(&["pi", "not-a-number"]);
    assert_eq!(out.status.code(), Some(64));
    let out = nthprime(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(64));
    let out = nthprime(&["nth", "10", "--algo", "quantum"]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn help_exits_zero() {
    let out = nthprime(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn json_format_is_parseable() {
    let out = nthprime(&["li", "100", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).expect("valid json");
    let li = v["value"].as_f64().unwrap();
    assert!((li - 30.126141584).abs() < 1e-6);

    let out = nthprime(&["nth", "100", "--algo", "binary", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).expect("valid json");
    assert_eq!(v["prime"].as_u64(), Some(541));
    assert_eq!(v["n"].as_u64(), Some(100));
}

#[test]
fn li_inv_round_trip_through_cli() {
    let out = nthprime(&["li-inv", "78627", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).expect("valid json");
    let alpha = v["alpha"].as_f64().unwrap();
    assert!((alpha - 999_992.0).abs() < 50.0, "alpha = {alpha}");
}

#[test]
fn segment_size_env_var_is_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_nthprime"))
        .args(["nth", "1000", "--algo", "sieve"])
        .env("NTHPRIME_SEGMENT_SIZE", "512")
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().next(), Some("7919"));

    let out = Command::new(env!("CARGO_BIN_EXE_nthprime"))
        .args(["nth", "1000", "--algo", "sieve"])
        .env("NTHPRIME_SEGMENT_SIZE", "zero")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn bench_writes_consistent_report() {
    let dir = std::env::temp_dir().join("nthprime-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bench.json");
    let out = nthprime(&[
        "bench",
        "--grid",
        "10,1e2,10^3",
        "--algos",
        "binary,sieve,cramer",
        "--runs",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    let report: nthprime_cli::report::BenchReport = serde_json::from_str(&text).expect("schema");
    assert_eq!(report.entries.len(), 9);
    assert!(report.validate_consistency().is_ok());
    assert_eq!(report.metadata.pi_method_name, "meissel");
    let p1000: Vec<_> = report.entries.iter().filter(|e| e.n == 1_000).collect();
    assert!(p1000.iter().all(|e| e.result == 7_919));
}

#[test]
fn bench_can_exclude_base_prime_cost() {
    let dir = std::env::temp_dir().join("nthprime-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bench-nobase.json");
    let out = nthprime(&[
        "bench",
        "--grid",
        "1000",
        "--algos",
        "sieve",
        "--runs",
        "1",
        "--exclude-base-cost",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let report: nthprime_cli::report::BenchReport =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(report.metadata.exclude_base_cost);
    assert_eq!(report.entries[0].result, 7_919);
}

#[test]
fn verify_small_scale_exits_zero() {
    let out = nthprime(&["verify", "--max-n", "1000"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("0 failures"));
}

#[test]
fn bad_grid_is_usage_error() {
    let out = nthprime(&["bench", "--grid", "abc", "--out", "/tmp/x.json"]);
    assert_eq!(out.status.code(), Some(64));
}
