//! Acceptance criterion 8 (slope half): the Cramer algorithm's log-log
//! wall-time slope must not exceed the binary search's by more than 0.1 over
//! n in [10^5, 10^7]. Also pins the baseline ordering: sieve-to-bound grows
//! about linearly and strictly steeper than both oracle-driven algorithms.
//! Timing-sensitive, so it lives alone in this test binary; cargo runs test
//! binaries one at a time.

use nthprime::nth_prime::Algorithm;
use nthprime_cli::bench::{bench_sweep, BenchConfig};

#[test]
fn criterion_8b_cramer_slope_at_most_binary_plus_tenth() {
    let cfg = BenchConfig {
        grid: vec![100_000, 316_228, 1_000_000, 3_162_278, 10_000_000],
        algos: vec![
            Algorithm::BinarySearch,
            Algorithm::CramerInterval,
            Algorithm::SieveToBound,
        ],
        runs: 3,
        ..BenchConfig::default()
    };
    let report = bench_sweep(&cfg).expect("sweep in domain");
    report.validate_consistency().expect("results agree");
    for e in &report.entries {
        println!(
            "  n = {:>9}  {:>7}  median {:>10.3}ms",
            e.n,
            e.algorithm,
            e.wall_time_ns as f64 / 1e6
        );
    }
    let binary = report.slopes["binary"];
    let cramer = report.slopes["cramer"];
    let sieve = report.slopes["sieve"];
    println!("  slopes: binary {binary:.3}, cramer {cramer:.3}, sieve {sieve:.3}");

    let pass = cramer <= binary + 0.1;
    println!(
        "acceptance criterion 8b (cramer slope <= binary slope + 0.1): {} \
         (cramer {cramer:.3}, binary {binary:.3} on n in [1e5, 1e7])",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(
        pass,
        "cramer slope {cramer:.3} exceeds binary slope {binary:.3} + 0.1"
    );
    // The baseline behaves like sieving to R ~ n ln n: near-linear (the ln n
    // factor and memory effects push it a little above 1) and the steepest
    // of the three. Observed 1.09..1.20 across runs on this hardware.
    assert!(
        (0.9..=1.3).contains(&sieve),
        "sieve-to-bound slope {sieve:.3} is not near-linear"
    );
    assert!(
        sieve > binary && sieve > cramer,
        "baseline slope {sieve:.3} should exceed binary {binary:.3} and cramer {cramer:.3}"
    );
}
