//! Benchmark and verification harnesses behind the `nthprime` binary.
//!
//! [`mod@bench`] times the nth-prime algorithms over a grid of n and emits a
//! machine-readable [`report::BenchReport`]; [`verify`] re-checks the
//! library's invariants at a configurable scale and emits a
//! [`report::VerifyReport`] whose failure list is the acceptance signal.
//! [`oracle`] holds the independent reference implementations the verifier
//! compares against.

pub mod bench;
pub mod oracle;
pub mod report;
pub mod verify;
