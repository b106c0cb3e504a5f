//! Benchmark sweep over (n, algorithm) cells.
//!
//! Each cell runs a fixed number of times on a monotonic clock and reports
//! the median, which keeps single-shot scheduler noise out of the slope
//! fits. Counters come from the final run; they are deterministic anyway.

use std::collections::BTreeMap;
use std::time::Duration;

use thiserror::Error;

use nthprime::nth_prime::{
    nth_prime_binary_search, nth_prime_cramer_with, nth_prime_sieve_bound_with, Algorithm,
    CramerParams, NthPrimeError, NthPrimeResult, DEFAULT_CRAMER_C0, DEFAULT_LI_TOLERANCE,
};
use nthprime::prime_count::PI_METHOD;
use nthprime::sieve::DEFAULT_SEGMENT_SIZE;

use crate::report::{BenchEntry, BenchMeta, BenchReport};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("benchmark grid must be nonempty and strictly ascending")]
    BadGrid,
    #[error("benchmark needs at least one algorithm")]
    NoAlgorithms,
    #[error("results disagree: {0}")]
    InconsistentResults(String),
    #[error("n = {n} ({algorithm}): {source}")]
    Run {
        n: u64,
        algorithm: Algorithm,
        source: NthPrimeError,
    },
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub grid: Vec<u64>,
    pub algos: Vec<Algorithm>,
    pub runs: u32,
    pub timeout: Duration,
    pub segment_size: usize,
    pub c0: f64,
    /// Subtract base-prime construction time from wall times, matching the
    /// stronger model where the primes up to sqrt(bound) are precomputed.
    pub exclude_base_cost: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            grid: Vec::new(),
            algos: vec![Algorithm::BinarySearch, Algorithm::CramerInterval],
            runs: 3,
            timeout: Duration::from_secs(600),
            segment_size: DEFAULT_SEGMENT_SIZE,
            c0: DEFAULT_CRAMER_C0,
            exclude_base_cost: false,
        }
    }
}

fn run_one(n: u64, algo: Algorithm, cfg: &BenchConfig) -> Result<NthPrimeResult, NthPrimeError> {
    match algo {
        Algorithm::BinarySearch => nth_prime_binary_search(n),
        Algorithm::SieveToBound => nth_prime_sieve_bound_with(n, cfg.segment_size),
        Algorithm::CramerInterval => nth_prime_cramer_with(
            n,
            &CramerParams {
                c0: cfg.c0,
                tol: DEFAULT_LI_TOLERANCE,
                segment_size: cfg.segment_size,
            },
        ),
    }
}

/// Runs the sweep and assembles the report, including per-algorithm log-log
/// slopes of median wall time against n.
pub fn bench_sweep(cfg: &BenchConfig) -> Result<BenchReport, BenchError> {
    if cfg.grid.is_empty() || cfg.grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(BenchError::BadGrid);
    }
    if cfg.algos.is_empty() {
        return Err(BenchError::NoAlgorithms);
    }
    let runs = cfg.runs.max(1);

    let mut entries = Vec::new();
    for &n in &cfg.grid {
        for &algo in &cfg.algos {
            // One untimed warmup keeps first-touch costs (lazy tables, page
            // faults) out of the medians.
            std::hint::black_box(run_one(n, algo, cfg)).map_err(|source| BenchError::Run {
                n,
                algorithm: algo,
                source,
            })?;
            let mut times = Vec::with_capacity(runs as usize);
            let mut last: Option<NthPrimeResult> = None;
            for _ in 0..runs {
                let r = std::hint::black_box(run_one(n, algo, cfg)).map_err(|source| {
                    BenchError::Run {
                        n,
                        algorithm: algo,
                        source,
                    }
                })?;
                let wall = if cfg.exclude_base_cost {
                    r.wall_time.saturating_sub(r.base_time)
                } else {
                    r.wall_time
                };
                times.push(wall);
                last = Some(r);
            }
            times.sort();
            let median = times[times.len() / 2];
            let r = last.expect("runs >= 1");
            entries.push(BenchEntry {
                n,
                algorithm: algo.name().to_string(),
                wall_time_ns: median.as_nanos() as u64,
                pi_evals: r.pi_evals,
                cells_sieved: r.cells_sieved,
                widenings: r.widenings,
                result: r.prime,
                timed_out: median > cfg.timeout,
            });
        }
    }

    let report = BenchReport {
        metadata: BenchMeta {
            version: env!("CARGO_PKG_VERSION").to_string(),
            pi_method_name: PI_METHOD.to_string(),
            c0: cfg.c0,
            segment_size: cfg.segment_size,
            exclude_base_cost: cfg.exclude_base_cost,
            runs,
        },
        slopes: fit_slopes(&entries),
        entries,
    };
    report
        .validate_consistency()
        .map_err(BenchError::InconsistentResults)?;
    Ok(report)
}

/// Least-squares slope of ln(wall time) against ln(n) per algorithm.
fn fit_slopes(entries: &[BenchEntry]) -> BTreeMap<String, f64> {
    let mut groups: BTreeMap<&str, Vec<(f64, f64)>> = BTreeMap::new();
    for e in entries {
        if e.wall_time_ns > 0 {
            groups
                .entry(&e.algorithm)
                .or_default()
                .push(((e.n as f64).ln(), (e.wall_time_ns as f64).ln()));
        }
    }
    let mut slopes = BTreeMap::new();
    for (algo, pts) in groups {
        if pts.len() < 2 {
            continue;
        }
        let n = pts.len() as f64;
        let sx: f64 = pts.iter().map(|p| p.0).sum();
        let sy: f64 = pts.iter().map(|p| p.1).sum();
        let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
        let denom = n * sxx - sx * sx;
        if denom.abs() > f64::EPSILON {
            slopes.insert(algo.to_string(), (n * sxy - sx * sy) / denom);
        }
    }
    slopes
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_small_grid_cross_checks() {
        let cfg = BenchConfig {
            grid: vec![10, 100, 1000],
            algos: vec![
                Algorithm::BinarySearch,
                Algorithm::SieveToBound,
                Algorithm::CramerInterval,
            ],
            runs: 1,
            ..BenchConfig::default()
        };
        let report = bench_sweep(&cfg).unwrap();
        assert_eq!(report.entries.len(), 9);
        assert!(report.validate_consistency().is_ok());
        let p1000: Vec<_> = report.entries.iter().filter(|e| e.n == 1000).collect();
        assert!(p1000.iter().all(|e| e.result == 7919));
    }

    #[test]
    fn rejects_bad_grids() {
        let mut cfg = BenchConfig {
            grid: vec![],
            ..BenchConfig::default()
        };
        assert!(matches!(bench_sweep(&cfg), Err(BenchError::BadGrid)));
        cfg.grid = vec![100, 100];
        assert!(matches!(bench_sweep(&cfg), Err(BenchError::BadGrid)));
        cfg.grid = vec![1000, 10];
        assert!(matches!(bench_sweep(&cfg), Err(BenchError::BadGrid)));
    }

    #[test]
    fn slope_fit_recovers_exact_power_law() {
        let entries: Vec<BenchEntry> = [(100u64, 1_000u64), (1_000, 31_623), (10_000, 1_000_000)]
            .iter()
            .map(|&(n, t)| BenchEntry {
                n,
                algorithm: "binary".into(),
                wall_time_ns: t,
                pi_evals: 0,
                cells_sieved: 0,
                widenings: 0,
                result: 0,
                timed_out: false,
            })
            .collect();
        let slopes = fit_slopes(&entries);
        let got = slopes["binary"];
        assert!((got - 1.5).abs() < 0.01, "slope {got}");
    }
}
