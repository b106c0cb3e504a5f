//! The three nth-prime algorithms.
//!
//! * [`nth_prime_binary_search`] — binary search over the exact pi(x) oracle,
//!   bracketed by Dusart's interval; at most `floor(log2 n) + 2` oracle calls.
//! * [`nth_prime_sieve_bound`] — the baseline: sieve upward from 2 to the
//!   Dusart upper bound R and count. Cheap per cell, but the work grows like
//!   R itself.
//! * [`nth_prime_cramer`] — invert li to get a proxy alpha for p_n, sieve a
//!   window around it whose width is the Cramer-conjecture gap scale
//!   `c * sqrt(n) * (ln n)^3.5`, and convert window-local indices to global
//!   ones with a single pi evaluation at the smallest window prime. The
//!   window width is conjectural, so correctness never depends on it: if the
//!   window misses, it is doubled (up to four times) and then the binary
//!   search takes over unconditionally.
//!
//! The default window constant (`DEFAULT_CRAMER_C0`) is calibrated, not
//! assumed: it is twice the largest observed `|alpha - p_n| / (sqrt(n)
//! (ln n)^3.5)` over n in [6, 10^4] exhaustively plus a log grid up to 10^7
//! (the maximum, 0.18391, occurs at n = 7).

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::arith::isqrt;
use crate::bounds::{self, BoundsError};
use crate::logint::{self, LogIntError};
use crate::prime_count::{self, PrimeCountError};
use crate::sieve::{self, SieveError, DEFAULT_SEGMENT_SIZE};

/// Calibrated default for the Cramer window constant; see the module docs.
pub const DEFAULT_CRAMER_C0: f64 = 0.368;

/// Default tolerance on |li(alpha) - n| when inverting li.
pub const DEFAULT_LI_TOLERANCE: f64 = 0.5;

/// Window doublings before falling back to binary search.
pub const MAX_WIDENINGS: u32 = 4;

/// Upper bound accepted by the sieve-to-bound baseline.
pub const MAX_SIEVE_BOUND: u64 = 1 << 34;

/// p_1 .. p_5; Dusart's bounds need n >= 6, smaller n are answered here.
pub const SMALL_PRIMES: [u64; 5] = [2, 3, 5, 7, 11];

#[derive(Debug, Error)]
pub enum NthPrimeError {
    #[error("n must be at least 1")]
    ZeroN,
    #[error("schoenfeld_check is restricted to x >= 2657, got {x}")]
    SchoenfeldDomain { x: u64 },
    #[error("cramer window requires n >= 6 and a positive finite constant")]
    WindowDomain,
    #[error("sieve bound {limit} for n = {n} exceeds the budget {max}")]
    BoundCapacity { n: u64, limit: u64, max: u64 },
    #[error("exhausted sieve bound {limit} before reaching prime #{n}")]
    BoundExhausted { n: u64, limit: u64 },
    #[error(transparent)]
    Sieve(#[from] SieveError),
    #[error(transparent)]
    PrimeCount(#[from] PrimeCountError),
    #[error(transparent)]
    LogInt(#[from] LogIntError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}

/// Which algorithm produced a result.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    BinarySearch,
    SieveToBound,
    CramerInterval,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [
        Algorithm::BinarySearch,
        Algorithm::SieveToBound,
        Algorithm::CramerInterval,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::BinarySearch => "binary",
            Algorithm::SieveToBound => "sieve",
            Algorithm::CramerInterval => "cramer",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "binary" => Ok(Algorithm::BinarySearch),
            "sieve" => Ok(Algorithm::SieveToBound),
            "cramer" => Ok(Algorithm::CramerInterval),
            other => Err(format!(
                "unknown algorithm '{other}' (expected binary, sieve, or cramer)"
            )),
        }
    }
}

/// p_n together with provenance counters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NthPrimeResult {
    pub n: u64,
    pub prime: u64,
    pub algorithm: Algorithm,
    /// Calls to the pi oracle.
    pub pi_evals: u64,
    /// Integers covered by sieving (windows, bounds, and oracle internals).
    pub cells_sieved: u64,
    /// Cramer-window doublings (always 0 for the other algorithms).
    pub widenings: u32,
    pub wall_time: Duration,
    /// Portion of `wall_time` spent producing base primes for sieving.
    pub base_time: Duration,
}

/// The sieving window around alpha: half-width `c * sqrt(n) * (ln n)^3.5`,
/// with integer endpoints clipped to [2, inf) and to the Dusart interval
/// expanded by one on each side. `interval` is None when the clip leaves
/// nothing (possible only for tiny constants).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CramerWindow {
    pub alpha: f64,
    pub width: f64,
    pub interval: Option<(u64, u64)>,
    pub constant: f64,
}

/// Tunables for [`nth_prime_cramer_with`].
#[derive(Clone, Copy, Debug)]
pub struct CramerParams {
    pub c0: f64,
    pub tol: f64,
    pub segment_size: usize,
}

impl Default for CramerParams {
    fn default() -> Self {
        Self {
            c0: DEFAULT_CRAMER_C0,
            tol: DEFAULT_LI_TOLERANCE,
            segment_size: DEFAULT_SEGMENT_SIZE,
        }
    }
}

fn lookup_small(n: u64, algorithm: Algorithm, started: Instant) -> NthPrimeResult {
    NthPrimeResult {
        n,
        prime: SMALL_PRIMES[n as usize - 1],
        algorithm,
        pi_evals: 0,
        cells_sieved: 0,
        widenings: 0,
        wall_time: started.elapsed(),
        base_time: Duration::ZERO,
    }
}

/// p_n as the smallest x with pi(x) = n, found by binary search over the
/// Dusart interval. Uses at most `floor(log2 n) + 2` pi evaluations.
pub fn nth_prime_binary_search(n: u64) -> Result<NthPrimeResult, NthPrimeError> {
    let started = Instant::now();
    if n == 0 {
        return Err(NthPrimeError::ZeroN);
    }
    if n <= 5 {
        return Ok(lookup_small(n, Algorithm::BinarySearch, started));
    }
    let iv = bounds::dusart_interval(n)?;
    let (mut lo, mut hi) = iv.as_integers();
    let mut pi_evals = 0u64;
    let mut cells = 0u64;
    // Invariant: pi(lo - 1) < n <= pi(hi). Dusart gives pi(lo) < n at entry
    // since lo <= L < p_n, and pi(hi) >= n since hi >= R > p_n.
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        let ev = prime_count::pi(mid)?;
        pi_evals += 1;
        cells += ev.cost.cells_sieved;
        if ev.count >= n {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(NthPrimeResult {
        n,
        prime: lo,
        algorithm: Algorithm::BinarySearch,
        pi_evals,
        cells_sieved: cells,
        widenings: 0,
        wall_time: started.elapsed(),
        base_time: Duration::ZERO,
    })
}

/// Baseline: sieve [2, R] upward and count to the nth prime.
pub fn nth_prime_sieve_bound(n: u64) -> Result<NthPrimeResult, NthPrimeError> {
    nth_prime_sieve_bound_with(n, DEFAULT_SEGMENT_SIZE)
}

/// As [`nth_prime_sieve_bound`] with an explicit segment size.
pub fn nth_prime_sieve_bound_with(
    n: u64,
    segment_size: usize,
) -> Result<NthPrimeResult, NthPrimeError> {
    let started = Instant::now();
    if n == 0 {
        return Err(NthPrimeError::ZeroN);
    }
    let limit = if n <= 5 {
        15
    } else {
        bounds::dusart_interval(n)?.hi.ceil() as u64
    };
    if limit > MAX_SIEVE_BOUND {
        return Err(NthPrimeError::BoundCapacity {
            n,
            limit,
            max: MAX_SIEVE_BOUND,
        });
    }

    let base_started = Instant::now();
    let root = isqrt(limit);
    let base = sieve::simple_sieve(root)?;
    let base_time = base_started.elapsed();
    let mut cells = root + 1;

    let step = segment_size.max(1) as u64;
    let mut counted = 0u64;
    let mut lo = 2u64;
    while lo <= limit {
        let hi = lo.saturating_add(step - 1).min(limit);
        let window = sieve::SieveWindow::sieve(lo, hi, &base)?;
        cells += hi - lo + 1;
        let here = window.count();
        if counted + here >= n {
            let mut seen = counted;
            for v in window.primes() {
                seen += 1;
                if seen == n {
                    return Ok(NthPrimeResult {
                        n,
                        prime: v,
                        algorithm: Algorithm::SieveToBound,
                        pi_evals: 0,
                        cells_sieved: cells,
                        widenings: 0,
                        wall_time: started.elapsed(),
                        base_time,
                    });
                }
            }
        }
        counted += here;
        lo = hi + 1;
    }
    Err(NthPrimeError::BoundExhausted { n, limit })
}

/// Half-width of the Cramer window: `c * sqrt(n) * (ln n)^3.5`.
pub fn cramer_width(n: u64, c: f64) -> f64 {
    let nf = n as f64;
    c * nf.sqrt() * nf.ln().powf(3.5)
}

/// Builds the integer sieving window around alpha (see [`CramerWindow`]).
pub fn cramer_window(n: u64, alpha: f64, c: f64) -> Result<CramerWindow, NthPrimeError> {
    if n < 6 || c.is_nan() || c <= 0.0 || c.is_infinite() {
        return Err(NthPrimeError::WindowDomain);
    }
    let width = cramer_width(n, c);
    let (dlo, dhi) = bounds::dusart_interval(n)?.as_integers();
    let clip_lo = dlo.saturating_sub(1).max(2);
    let clip_hi = dhi + 1;
    let raw_lo = (alpha - width).floor().max(2.0) as u64;
    let raw_hi = (alpha + width).ceil().max(2.0) as u64;
    let lo = raw_lo.max(clip_lo);
    let hi = raw_hi.min(clip_hi);
    Ok(CramerWindow {
        alpha,
        width,
        interval: (lo <= hi).then_some((lo, hi)),
        constant: c,
    })
}

/// The li-inverse + window-sieve algorithm with default parameters.
pub fn nth_prime_cramer(n: u64) -> Result<NthPrimeResult, NthPrimeError> {
    nth_prime_cramer_with(n, &CramerParams::default())
}

/// Step 1: alpha = li^-1(n). Step 2: sieve the Cramer window around alpha.
/// Step 3: one pi evaluation at the smallest window prime anchors the
/// window-local indices; p_n is then read off directly. A window that misses
/// is doubled, and after [`MAX_WIDENINGS`] doublings the binary search
/// answers unconditionally.
pub fn nth_prime_cramer_with(
    n: u64,
    params: &CramerParams,
) -> Result<NthPrimeResult, NthPrimeError> {
    let started = Instant::now();
    if n == 0 {
        return Err(NthPrimeError::ZeroN);
    }
    if n <= 5 {
        return Ok(lookup_small(n, Algorithm::CramerInterval, started));
    }

    let inv = logint::li_inverse(n, params.tol)?;
    let mut c = params.c0;
    let mut widenings = 0u32;
    let mut pi_evals = 0u64;
    let mut cells = 0u64;
    let mut base_time = Duration::ZERO;
    // First anchor (prime, pi(prime)); reused across widened windows because
    // every widened window contains the earlier one.
    let mut anchor: Option<(u64, u64)> = None;

    loop {
        let window = cramer_window(n, inv.alpha, c)?;
        if let Some((wlo, whi)) = window.interval {
            let base_started = Instant::now();
            let base = sieve::simple_sieve(isqrt(whi))?;
            base_time += base_started.elapsed();
            cells += isqrt(whi) + 1;

            let primes = sieve::segmented_sieve_with(wlo, whi, &base, params.segment_size)?;
            cells += whi - wlo + 1;

            if !primes.is_empty() {
                let (anchor_p, anchor_pi) = match anchor {
                    Some(t) => t,
                    None => {
                        let ev = prime_count::pi(primes[0])?;
                        pi_evals += 1;
                        cells += ev.cost.cells_sieved;
                        let t = (primes[0], ev.count);
                        anchor = Some(t);
                        t
                    }
                };
                // pi at the current smallest window prime, derived from the
                // anchor: window primes are consecutive.
                let m = match primes.values().binary_search(&anchor_p) {
                    Ok(idx) => anchor_pi - idx as u64,
                    // Unreachable for monotone widening; re-anchor honestly.
                    Err(_) => {
                        let ev = prime_count::pi(primes[0])?;
                        pi_evals += 1;
                        cells += ev.cost.cells_sieved;
                        anchor = Some((primes[0], ev.count));
                        ev.count
                    }
                };
                if m <= n && n - m < primes.len() as u64 {
                    return Ok(NthPrimeResult {
                        n,
                        prime: primes[(n - m) as usize],
                        algorithm: Algorithm::CramerInterval,
                        pi_evals,
                        cells_sieved: cells,
                        widenings,
                        wall_time: started.elapsed(),
                        base_time,
                    });
                }
            }
        }
        if widenings == MAX_WIDENINGS {
            let fb = nth_prime_binary_search(n)?;
            return Ok(NthPrimeResult {
                n,
                prime: fb.prime,
                algorithm: Algorithm::CramerInterval,
                pi_evals: pi_evals + fb.pi_evals,
                cells_sieved: cells + fb.cells_sieved,
                widenings,
                wall_time: started.elapsed(),
                base_time,
            });
        }
        c *= 2.0;
        widenings += 1;
    }
}

/// Residual of Schoenfeld's inequality at x:
/// `|pi(x) - li(x)| - sqrt(x) ln(x) / (8 pi)`. Negative means the bound
/// holds. Restricted to x >= 2657, the classical validity threshold.
pub fn schoenfeld_check(x: u64) -> Result<f64, NthPrimeError> {
    if x < 2657 {
        return Err(NthPrimeError::SchoenfeldDomain { x });
    }
    let count = prime_count::pi(x)?.count;
    let liv = logint::li(x as f64, 1e-6)?.value.to_f64();
    let xf = x as f64;
    let bound = xf.sqrt() * xf.ln() / (8.0 * std::f64::consts::PI);
    Ok((count as f64 - liv).abs() - bound)
}
