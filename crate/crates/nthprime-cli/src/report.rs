//! Machine-readable reports. JSON is the only structured output surface;
//! schemas are field-ordered structs, so serialization is deterministic and
//! two runs differ only in the explicitly-named timing fields.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// One timed (n, algorithm) cell of a benchmark sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchEntry {
    pub n: u64,
    pub algorithm: String,
    /// Median wall time over the configured runs (timing field).
    pub wall_time_ns: u64,
    pub pi_evals: u64,
    pub cells_sieved: u64,
    pub widenings: u32,
    pub result: u64,
    /// True when the entry exceeded the per-entry time budget.
    pub timed_out: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchMeta {
    pub version: String,
    pub pi_method_name: String,
    pub c0: f64,
    pub segment_size: usize,
    /// Whether base-prime construction time was excluded from wall times.
    pub exclude_base_cost: bool,
    pub runs: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub metadata: BenchMeta,
    pub entries: Vec<BenchEntry>,
    /// Fitted log-log slope of wall time vs n, per algorithm (timing-derived).
    pub slopes: BTreeMap<String, f64>,
}

impl BenchReport {
    /// All entries for one n must report the same prime.
    pub fn validate_consistency(&self) -> Result<(), String> {
        let mut seen: BTreeMap<u64, u64> = BTreeMap::new();
        for e in &self.entries {
            if let Some(&r) = seen.get(&e.n) {
                if r != e.result {
                    return Err(format!(
                        "entries for n = {} disagree: {} vs {} ({})",
                        e.n, r, e.result, e.algorithm
                    ));
                }
            } else {
                seen.insert(e.n, e.result);
            }
        }
        Ok(())
    }
}

/// Verification failure categories.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureKind {
    DusartContainment,
    Schoenfeld,
    CrossAlgorithm,
    LiAccuracy,
    PiBudget,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyFailure {
    pub kind: FailureKind,
    /// The n or x at which the check failed.
    pub at: u64,
    pub details: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyMeta {
    pub version: String,
    pub max_n: u64,
    /// Wall time of the verification run (timing field).
    pub elapsed_ns: u64,
}

/// Deterministic diagnostics gathered during verification.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyStats {
    /// Max of |alpha - p_n| / (sqrt(n) (ln n)^3.5) over the sampled grid;
    /// doubling it reproduces the calibrated window constant.
    pub max_alpha_gap_ratio: f64,
    /// Smallest grid n from which every Cramer window fits under the
    /// interval-size threshold B(n, 1).
    pub threshold_crossover_n: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub meta: VerifyMeta,
    /// Individual assertions performed.
    pub checked: u64,
    pub failures: Vec<VerifyFailure>,
    pub stats: VerifyStats,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}
