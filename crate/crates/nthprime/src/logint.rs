//! The logarithmic integral li(x) and its inverse.
//!
//! li here is the principal value of the integral of dt/ln t from 0, so
//! li(2) = 1.04516..., matching the normalization Schoenfeld's inequality
//! uses. The asymptotic series `(x/ln x) * sum k!/(ln x)^k` diverges, so
//! evaluation instead goes through the everywhere-convergent power series of
//! the exponential integral,
//!
//! ```text
//! li(x) = Ei(ln x),   Ei(z) = gamma + ln z + sum_{k>=1} z^k / (k * k!)
//! ```
//!
//! summed in double-double arithmetic ([`crate::dd`]); all terms are positive
//! for z > 0, so no cancellation occurs and the result carries far more
//! accuracy than an f64 can hold. `li_inverse` bisects li over Dusart's
//! interval for p_n; when the interval fails to bracket the target (which
//! does happen for small n) the bracket is widened by doubling and the event
//! is recorded on the result.

use thiserror::Error;

use crate::bounds::{self, BoundsError};
use crate::dd::DoubleDouble;

#[derive(Debug, Error)]
pub enum LogIntError {
    #[error("li is evaluated for x >= 2 only, got {x}")]
    DomainTooSmall { x: f64 },
    #[error("eps must be positive, got {eps}")]
    InvalidEps { eps: f64 },
    #[error("requested accuracy {requested:e} unattainable (achievable {achievable:e})")]
    Precision { requested: f64, achievable: f64 },
    #[error("tolerance must be positive, got {tol}")]
    InvalidTolerance { tol: f64 },
    #[error("li_inverse requires n >= 6 (uses the Dusart bracket), got {n}")]
    SmallN { n: u64 },
    #[error("bracket around li(alpha) = {n} could not be established")]
    BracketFailed { n: u64 },
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}

/// A li evaluation: the argument, the extended-precision value, and the
/// achieved absolute error bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LiValue {
    pub x: f64,
    pub value: DoubleDouble,
    pub eps: f64,
}

/// Result of inverting li: alpha with |li(alpha) - n| <= tol.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlphaResult {
    pub alpha: f64,
    pub n: u64,
    pub residual: f64,
    /// Number of li evaluations spent.
    pub evals: u32,
    /// Times the Dusart bracket had to be widened before it contained alpha.
    pub bracket_widenings: u32,
}

/// Evaluates the Ei power series at ln x. Returns the value and a
/// conservative absolute error bound.
fn li_dd(x: f64) -> (DoubleDouble, f64) {
    debug_assert!(x >= 2.0);
    let z = DoubleDouble::from(x).ln();
    let mut sum = DoubleDouble::EULER_GAMMA + z.ln();
    let mut term = DoubleDouble::ONE;
    let mut k = 0u32;
    loop {
        k += 1;
        term = term * z / f64::from(k);
        let add = term / f64::from(k);
        sum = sum + add;
        if add.hi().abs() < sum.hi().abs() * 1e-34 || k >= 600 {
            break;
        }
    }
    // Positive-term series: rounding is bounded by ~k ulps of the sum.
    let err = sum.hi().abs() * 1e-28 + 1e-30;
    (sum, err)
}

/// li(x) to absolute accuracy `eps`; x must be at least 2.
pub fn li(x: f64, eps: f64) -> Result<LiValue, LogIntError> {
    if !x.is_finite() || x < 2.0 {
        return Err(LogIntError::DomainTooSmall { x });
    }
    if eps.is_nan() || eps <= 0.0 {
        return Err(LogIntError::InvalidEps { eps });
    }
    let (value, achieved) = li_dd(x);
    if achieved > eps {
        return Err(LogIntError::Precision {
            requested: eps,
            achievable: achieved,
        });
    }
    Ok(LiValue {
        x,
        value,
        eps: achieved,
    })
}

/// Finds alpha with |li(alpha) - n| <= tol by bisection bracketed by the
/// Dusart interval for p_n.
pub fn li_inverse(n: u64, tol: f64) -> Result<AlphaResult, LogIntError> {
    if n < 6 {
        return Err(LogIntError::SmallN { n });
    }
    if tol.is_nan() || tol <= 0.0 || tol.is_infinite() {
        return Err(LogIntError::InvalidTolerance { tol });
    }
    let iv = bounds::dusart_interval(n)?;
    let target = DoubleDouble::from(n);
    let mut evals = 0u32;
    fn eval(x: f64, target: DoubleDouble, evals: &mut u32) -> f64 {
        *evals += 1;
        (li_dd(x).0 - target).to_f64()
    }

    let (mut lo, mut hi) = (iv.lo, iv.hi);
    let mut flo = eval(lo, target, &mut evals);
    let mut fhi = eval(hi, target, &mut evals);
    let mut widenings = 0u32;
    // The Dusart interval contains p_n but not provably alpha; double the
    // bracket outward until it straddles the target.
    while flo > 0.0 && widenings < 64 {
        let w = hi - lo;
        lo = (lo - w).max(2.0);
        flo = eval(lo, target, &mut evals);
        widenings += 1;
        if lo == 2.0 {
            break;
        }
    }
    while fhi < 0.0 && widenings < 64 {
        let w = hi - lo;
        hi += w;
        fhi = eval(hi, target, &mut evals);
        widenings += 1;
    }
    if flo > 0.0 || fhi < 0.0 {
        return Err(LogIntError::BracketFailed { n });
    }

    loop {
        let mid = 0.5 * (lo + hi);
        let fm = eval(mid, target, &mut evals);
        if fm.abs() <= tol {
            return Ok(AlphaResult {
                alpha: mid,
                n,
                residual: fm.abs(),
                evals,
                bracket_widenings: widenings,
            });
        }
        if fm > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= mid.abs() * f64::EPSILON {
            // The float grid is exhausted; with li' = 1/ln x < 1 this cannot
            // happen for any tol reachable from u64 targets.
            return Err(LogIntError::Precision {
                requested: tol,
                achievable: fm.abs(),
            });
        }
    }
}
