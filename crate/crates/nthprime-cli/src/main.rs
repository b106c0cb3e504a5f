//! The `nthprime` command-line tool.
//!
//! Exit codes: 0 success, 1 domain or I/O error, 2 verification failure,
//! 64 usage error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::error::ErrorKind as ClapErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use nthprime::logint;
use nthprime::nth_prime::{
    nth_prime_binary_search, nth_prime_cramer_with, nth_prime_sieve_bound_with, Algorithm,
    CramerParams, NthPrimeResult, DEFAULT_CRAMER_C0, DEFAULT_LI_TOLERANCE,
};
use nthprime::prime_count;
use nthprime::sieve::DEFAULT_SEGMENT_SIZE;
use nthprime_cli::bench::{bench_sweep, BenchConfig};
use nthprime_cli::report::{BenchReport, VerifyReport};
use nthprime_cli::verify::{run_verify, VerifyConfig};

const ENV_SEGMENT_SIZE: &str = "NTHPRIME_SEGMENT_SIZE";

#[derive(Parser)]
#[command(
    name = "nthprime",
    version,
    about = "Compute the nth prime, pi(x), li(x) and friends; benchmark and verify them"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    global: GlobalOpts,
}

#[derive(Args)]
struct GlobalOpts {
    /// Output format for results on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads for segmented sieving (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Segment size in integers for all segmented sieving
    /// (falls back to $NTHPRIME_SEGMENT_SIZE, then 2^18).
    #[arg(long, global = true)]
    segment_size: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Binary,
    Sieve,
    Cramer,
}

impl From<AlgoArg> for Algorithm {
    fn from(a: AlgoArg) -> Algorithm {
        match a {
            AlgoArg::Binary => Algorithm::BinarySearch,
            AlgoArg::Sieve => Algorithm::SieveToBound,
            AlgoArg::Cramer => Algorithm::CramerInterval,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Exact prime count pi(x).
    Pi { x: u64 },
    /// The nth prime with provenance counters.
    Nth {
        n: u64,
        #[arg(long, value_enum, default_value_t = AlgoArg::Binary)]
        algo: AlgoArg,
        /// Cramer window constant (cramer algorithm only).
        #[arg(long, default_value_t = DEFAULT_CRAMER_C0)]
        c0: f64,
    },
    /// Logarithmic integral li(x), principal value from 0.
    Li {
        x: f64,
        /// Absolute error budget.
        #[arg(long, default_value_t = 1e-9)]
        eps: f64,
    },
    /// Invert li: find alpha with li(alpha) = n.
    LiInv {
        n: u64,
        /// Tolerance on |li(alpha) - n|.
        #[arg(long, default_value_t = DEFAULT_LI_TOLERANCE)]
        tol: f64,
    },
    /// Dusart interval (L, R) for p_n and the sieve threshold B(n).
    Bounds { n: u64 },
    /// Time algorithms over a grid of n and write a JSON report.
    Bench {
        /// Comma-separated n values; `a..b` expands by decades
        /// (e.g. `1e3..1e6` or `1000,5000,1e4`).
        #[arg(long)]
        grid: String,
        /// Comma-separated algorithms: binary, sieve, cramer.
        #[arg(long, default_value = "binary,cramer")]
        algos: String,
        /// Report destination.
        #[arg(long)]
        out: PathBuf,
        /// Timed runs per entry (median is reported).
        #[arg(long, default_value_t = 3)]
        runs: u32,
        /// Per-entry time budget in seconds; entries over it are flagged.
        #[arg(long, default_value_t = 600)]
        timeout_secs: u64,
        /// Exclude base-prime construction from wall times.
        #[arg(long)]
        exclude_base_cost: bool,
    },
    /// Re-check library invariants; exit 2 if any fail.
    Verify {
        #[arg(long, default_value_t = 100_000)]
        max_n: u64,
        /// Optional report destination.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum CliError {
    /// Domain, capacity, or I/O problems: exit 1.
    Failure(String),
    /// Verification found violations: exit 2.
    VerificationFailed,
    /// Bad invocation: exit 64.
    Usage(String),
}

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Failure(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ClapErrorKind::DisplayHelp | ClapErrorKind::DisplayVersion => {
                    let _ = e.print();
                    return ExitCode::SUCCESS;
                }
                _ => 64,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    if let Some(threads) = cli.global.threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }

    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::VerificationFailed) => ExitCode::from(2),
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(64)
        }
    }
}

fn segment_size(global: &GlobalOpts) -> Result<usize, CliError> {
    if let Some(s) = global.segment_size {
        if s == 0 {
            return Err(CliError::Usage("segment size must be positive".into()));
        }
        return Ok(s);
    }
    match std::env::var(ENV_SEGMENT_SIZE) {
        Ok(v) => v
            .parse::<usize>()
            .ok()
            .filter(|&s| s > 0)
            .ok_or_else(|| CliError::Usage(format!("bad {ENV_SEGMENT_SIZE} value '{v}'"))),
        Err(_) => Ok(DEFAULT_SEGMENT_SIZE),
    }
}

fn print_nth(r: &NthPrimeResult, format: Format) {
    match format {
        Format::Text => {
            println!("{}", r.prime);
            println!("  n            = {}", r.n);
            println!("  algorithm    = {}", r.algorithm);
            println!("  pi_evals     = {}", r.pi_evals);
            println!("  cells_sieved = {}", r.cells_sieved);
            println!("  widenings    = {}", r.widenings);
            println!("  wall_time    = {:?}", r.wall_time);
        }
        Format::Json => {
            let obj = json!({
                "n": r.n,
                "prime": r.prime,
                "algorithm": r.algorithm.name(),
                "pi_evals": r.pi_evals,
                "cells_sieved": r.cells_sieved,
                "widenings": r.widenings,
                "wall_time_ns": r.wall_time.as_nanos() as u64,
                "base_time_ns": r.base_time.as_nanos() as u64,
            });
            println!("{obj}");
        }
    }
}

/// Accepts `123`, `1e6`, `10^6`, comma lists, and `a..b` decade ranges.
fn parse_grid(text: &str) -> Result<Vec<u64>, CliError> {
    fn one(tok: &str) -> Option<u64> {
        let tok = tok.trim();
        if let Some((b, e)) = tok.split_once('^') {
            let (b, e) = (b.parse::<u64>().ok()?, e.parse::<u32>().ok()?);
            return b.checked_pow(e);
        }
        if let Ok(v) = tok.parse::<u64>() {
            return Some(v);
        }
        let f = tok.parse::<f64>().ok()?;
        (f.fract() == 0.0 && (1.0..=1e18).contains(&f)).then_some(f as u64)
    }
    let mut grid = Vec::new();
    for part in text.split(',') {
        if let Some((a, b)) = part.split_once("..") {
            let (a, b) = (
                one(a).ok_or_else(|| CliError::Usage(format!("bad grid value '{a}'")))?,
                one(b).ok_or_else(|| CliError::Usage(format!("bad grid value '{b}'")))?,
            );
            let mut v = a;
            while v <= b {
                grid.push(v);
                match v.checked_mul(10) {
                    Some(next) => v = next,
                    None => break,
                }
            }
        } else {
            grid.push(one(part).ok_or_else(|| CliError::Usage(format!("bad grid value '{part}'")))?);
        }
    }
    grid.sort_unstable();
    grid.dedup();
    if grid.is_empty() {
        return Err(CliError::Usage("empty benchmark grid".into()));
    }
    Ok(grid)
}

fn parse_algos(text: &str) -> Result<Vec<Algorithm>, CliError> {
    let mut algos = Vec::new();
    for part in text.split(',') {
        let a: Algorithm = part
            .trim()
            .parse()
            .map_err(|e: String| CliError::Usage(e))?;
        if !algos.contains(&a) {
            algos.push(a);
        }
    }
    Ok(algos)
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let format = cli.global.format;
    match &cli.command {
        Command::Pi { x } => {
            let ev = prime_count::pi(*x)?;
            match format {
                Format::Text => println!("{}", ev.count),
                Format::Json => println!(
                    "{}",
                    json!({
                        "x": ev.x,
                        "count": ev.count,
                        "phi_nodes": ev.cost.phi_nodes,
                        "cells_sieved": ev.cost.cells_sieved,
                    })
                ),
            }
            Ok(())
        }
        Command::Nth { n, algo, c0 } => {
            let seg = segment_size(&cli.global)?;
            let r = match Algorithm::from(*algo) {
                Algorithm::BinarySearch => nth_prime_binary_search(*n)?,
                Algorithm::SieveToBound => nth_prime_sieve_bound_with(*n, seg)?,
                Algorithm::CramerInterval => nth_prime_cramer_with(
                    *n,
                    &CramerParams {
                        c0: *c0,
                        tol: DEFAULT_LI_TOLERANCE,
                        segment_size: seg,
                    },
                )?,
            };
            print_nth(&r, format);
            Ok(())
        }
        Command::Li { x, eps } => {
            let v = logint::li(*x, *eps)?;
            match format {
                Format::Text => println!("{:.12}", v.value.to_f64()),
                Format::Json => println!(
                    "{}",
                    json!({ "x": v.x, "value": v.value.to_f64(), "eps": v.eps })
                ),
            }
            Ok(())
        }
        Command::LiInv { n, tol } => {
            let r = logint::li_inverse(*n, *tol)?;
            match format {
                Format::Text => {
                    println!("{:.6}", r.alpha);
                    println!("  residual          = {:.3e}", r.residual);
                    println!("  li_evals          = {}", r.evals);
                    println!("  bracket_widenings = {}", r.bracket_widenings);
                }
                Format::Json => println!(
                    "{}",
                    json!({
                        "n": r.n,
                        "alpha": r.alpha,
                        "residual": r.residual,
                        "evals": r.evals,
                        "bracket_widenings": r.bracket_widenings,
                    })
                ),
            }
            Ok(())
        }
        Command::Bounds { n } => {
            let iv = nthprime::bounds::dusart_interval(*n)?;
            let b = nthprime::bounds::threshold_b(*n, 1.0)?;
            match format {
                Format::Text => {
                    println!("L = {:.6}", iv.lo);
                    println!("R = {:.6}", iv.hi);
                    println!("B = {:.6}", b);
                }
                Format::Json => {
                    println!("{}", json!({ "n": n, "lo": iv.lo, "hi": iv.hi, "b": b }))
                }
            }
            Ok(())
        }
        Command::Bench {
            grid,
            algos,
            out,
            runs,
            timeout_secs,
            exclude_base_cost,
        } => {
            let cfg = BenchConfig {
                grid: parse_grid(grid)?,
                algos: parse_algos(algos)?,
                runs: *runs,
                timeout: Duration::from_secs(*timeout_secs),
                segment_size: segment_size(&cli.global)?,
                c0: DEFAULT_CRAMER_C0,
                exclude_base_cost: *exclude_base_cost,
            };
            let report = bench_sweep(&cfg)?;
            write_json(out, &report)?;
            match format {
                Format::Text => print_bench_summary(&report),
                Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
            }
            Ok(())
        }
        Command::Verify { max_n, out } => {
            let report = run_verify(&VerifyConfig { max_n: *max_n });
            if let Some(path) = out {
                write_json(path, &report)?;
            }
            match format {
                Format::Text => print_verify_summary(&report),
                Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
            }
            if report.passed() {
                Ok(())
            } else {
                Err(CliError::VerificationFailed)
            }
        }
    }
}

fn write_json<T: serde::Serialize>(path: &PathBuf, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value)?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}

fn print_bench_summary(report: &BenchReport) {
    println!(
        "{:>12} {:>8} {:>14} {:>9} {:>14} {:>9} {:>12}",
        "n", "algo", "median", "pi_evals", "cells", "widen", "result"
    );
    for e in &report.entries {
        println!(
            "{:>12} {:>8} {:>12.3}ms {:>9} {:>14} {:>9} {:>12}{}",
            e.n,
            e.algorithm,
            e.wall_time_ns as f64 / 1e6,
            e.pi_evals,
            e.cells_sieved,
            e.widenings,
            e.result,
            if e.timed_out { "  [timeout]" } else { "" }
        );
    }
    for (algo, slope) in &report.slopes {
        println!("log-log slope[{algo}] = {slope:.3}");
    }
}

fn print_verify_summary(report: &VerifyReport) {
    println!(
        "verify: {} checks, {} failures (max_n = {})",
        report.checked,
        report.failures.len(),
        report.meta.max_n
    );
    println!(
        "  max alpha-gap ratio      = {:.6}",
        report.stats.max_alpha_gap_ratio
    );
    match report.stats.threshold_crossover_n {
        Some(n) => println!("  threshold crossover at n = {n}"),
        None => println!("  threshold crossover not reached"),
    }
    for f in report.failures.iter().take(20) {
        println!("  FAIL [{:?}] at {}: {}", f.kind, f.at, f.details);
    }
    if report.failures.len() > 20 {
        println!("  ... and {} more", report.failures.len() - 20);
    }
}
