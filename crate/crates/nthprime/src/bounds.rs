//! Explicit bounds on the nth prime and the interval-size threshold that
//! decides when window sieving beats binary search.
//!
//! Dusart's inequalities give, for n >= 6,
//!
//! ```text
//! L = n (ln n + ln ln n - 1)  <  p_n  <  n (ln n + ln ln n) = R
//! ```
//!
//! so the search interval always has width exactly n. The width identity is
//! preserved in floating point by computing `L = R - n`.
//!
//! Sharper brackets exist for large n (down to width n / (10 ln n) once
//! n >= 688383), but a log-factor narrower interval leaves log2 of its width
//! unchanged asymptotically, so binary search gains nothing; this module
//! deliberately stays with the width-n interval.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum BoundsError {
    #[error("n = {n} below the domain of this bound (requires n >= {min})")]
    SmallN { n: u64, min: u64 },
    #[error("constant c = {c} must be a finite positive real")]
    InvalidConstant { c: f64 },
}

/// A real interval (lo, hi) with lo < hi.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    /// Outward-rounded integer endpoints: (floor(lo), ceil(hi)).
    pub fn as_integers(&self) -> (u64, u64) {
        (self.lo.max(0.0).floor() as u64, self.hi.ceil() as u64)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo < v && v < self.hi
    }
}

/// Dusart's search interval for p_n; requires n >= 6.
pub fn dusart_interval(n: u64) -> Result<Interval, BoundsError> {
    if n < 6 {
        return Err(BoundsError::SmallN { n, min: 6 });
    }
    let nf = n as f64;
    let s = nf.ln() + nf.ln().ln();
    let hi = nf * s;
    let lo = hi - nf;
    Ok(Interval { lo, hi })
}

/// Maximum window size `B = (1/c) * sqrt(n) * (ln n)^4 / ln ln n` below which
/// an interval sieve beats binary search. Requires n >= 3 so that
/// `ln ln n > 0`; the constant c is not pinned by theory and defaults to 1 at
/// call sites.
pub fn threshold_b(n: u64, c: f64) -> Result<f64, BoundsError> {
    if c.is_nan() || c <= 0.0 || c.is_infinite() {
        return Err(BoundsError::InvalidConstant { c });
    }
    if n < 3 {
        return Err(BoundsError::SmallN { n, min: 3 });
    }
    let nf = n as f64;
    let ln = nf.ln();
    Ok(nf.sqrt() * ln.powi(4) / (ln.ln() * c))
}
