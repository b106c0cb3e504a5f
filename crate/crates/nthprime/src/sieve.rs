//! Sieves of Eratosthenes: a simple full-range sieve and a segmented sieve
//! over a window `[lo, hi]` driven by precomputed base primes.
//!
//! Windows are represented as bitsets over every integer in range. Even
//! positions are struck with a word mask and odd primes stride in steps of
//! `2p`, which keeps the output bit-identical to the naive marking while
//! doing about half the work. The segmented driver processes a window in
//! fixed-size segments so memory stays proportional to the segment, not the
//! window; segments may sieve in parallel and are merged in index order, so
//! results are deterministic and independent of the segment size.

use rayon::prelude::*;
use std::ops::Deref;
use thiserror::Error;

use crate::arith::isqrt;

/// Segment size (in integers) used when no override is given.
pub const DEFAULT_SEGMENT_SIZE: usize = 1 << 18;

/// Largest limit `simple_sieve` accepts; the bitset for this is 256 MiB.
pub const MAX_SIMPLE_SIEVE_LIMIT: u64 = 1 << 31;

#[derive(Debug, Error)]
pub enum SieveError {
    #[error("sieve limit {limit} exceeds the memory budget (max {max})")]
    CapacityExceeded { limit: u64, max: u64 },
    #[error("invalid range: lo = {lo} exceeds hi = {hi}")]
    InvalidRange { lo: u64, hi: u64 },
    #[error(
        "base primes insufficient for hi = {hi}: prime {missing} <= floor(sqrt(hi)) = {needed} is not covered"
    )]
    InsufficientBase { hi: u64, missing: u64, needed: u64 },
    #[error("prime list must be strictly increasing with every element >= 2")]
    MalformedPrimeList,
    #[error("segment size must be at least 1")]
    ZeroSegmentSize,
}

/// A strictly increasing list of primes, the output of every sieve here.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PrimeList {
    values: Vec<u64>,
}

impl PrimeList {
    /// Wraps a caller-supplied list, rejecting anything that is not strictly
    /// increasing or contains a value below 2.
    pub fn new(values: Vec<u64>) -> Result<Self, SieveError> {
        let ok = values.first().is_none_or(|&v| v >= 2)
            && values.windows(2).all(|w| w[0] < w[1]);
        if ok {
            Ok(Self { values })
        } else {
            Err(SieveError::MalformedPrimeList)
        }
    }

    pub(crate) fn from_sorted(values: Vec<u64>) -> Self {
        debug_assert!(values.windows(2).all(|w| w[0] < w[1]));
        Self { values }
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn into_vec(self) -> Vec<u64> {
        self.values
    }

    /// Number of listed primes `<= x`.
    pub fn count_le(&self, x: u64) -> u64 {
        self.values.partition_point(|&p| p <= x) as u64
    }

    /// The nth prime of the list, 1-indexed (`nth(1)` is the first element).
    pub fn nth(&self, n: u64) -> Option<u64> {
        if n == 0 {
            None
        } else {
            self.values.get(n as usize - 1).copied()
        }
    }
}

impl Deref for PrimeList {
    type Target = [u64];

    fn deref(&self) -> &[u64] {
        &self.values
    }
}

/// Word mask with bits set at even offsets relative to a window starting at
/// `lo`: bit i marks the integer lo + i.
#[inline]
fn even_mask(lo: u64) -> u64 {
    if lo.is_multiple_of(2) {
        0x5555_5555_5555_5555
    } else {
        0xAAAA_AAAA_AAAA_AAAA
    }
}

/// One contiguously sieved window `[lo, hi]`; bit i set means `lo + i` is
/// composite (0 and 1 are marked too). Memory is O(hi - lo).
#[derive(Clone, Debug)]
pub struct SieveWindow {
    lo: u64,
    hi: u64,
    composite: Vec<u64>,
}

impl SieveWindow {
    /// Sieves `[lo, hi]` in one piece. `base` must cover every prime up to
    /// `floor(sqrt(hi))`; an insufficient base is detected and reported.
    /// `lo` below 2 is normalized to 2, so `hi` must be at least 2.
    pub fn sieve(lo: u64, hi: u64, base: &PrimeList) -> Result<Self, SieveError> {
        let lo = lo.max(2);
        if lo > hi {
            return Err(SieveError::InvalidRange { lo, hi });
        }
        check_base(hi, base)?;
        Ok(Self::sieve_unchecked(lo, hi, base))
    }

    /// Marking core; preconditions already validated, lo normalized >= 2.
    fn sieve_unchecked(lo: u64, hi: u64, base: &PrimeList) -> Self {
        debug_assert!(2 <= lo && lo <= hi);
        let len = (hi - lo + 1) as usize;
        let words = len.div_ceil(64);
        let mut composite = vec![0u64; words];

        // Strike even positions wholesale, then unmark 2 itself.
        let mask = even_mask(lo);
        for w in composite.iter_mut() {
            *w |= mask;
        }
        if lo == 2 {
            composite[0] &= !1u64;
        }

        for &p in base.values() {
            if p < 3 {
                continue;
            }
            if p.saturating_mul(p) > hi {
                break;
            }
            // First multiple of p in range, at least p^2, and odd (even
            // multiples are already struck).
            let mut m = p * p;
            if m < lo {
                m = lo.div_ceil(p) * p;
            }
            if m.is_multiple_of(2) {
                m += p;
            }
            let step = 2 * p;
            while m <= hi {
                let i = (m - lo) as usize;
                composite[i >> 6] |= 1u64 << (i & 63);
                m += step;
            }
        }

        // Clear the bits past hi so popcounts are exact.
        let tail = len % 64;
        if tail != 0 {
            let last = composite.len() - 1;
            composite[last] &= (1u64 << tail) - 1;
        }
        Self { lo, hi, composite }
    }

    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    /// True when `v` lies in the window and survived sieving.
    pub fn is_prime(&self, v: u64) -> bool {
        if v < self.lo || v > self.hi {
            return false;
        }
        let i = (v - self.lo) as usize;
        self.composite[i >> 6] & (1u64 << (i & 63)) == 0
    }

    /// Number of primes in the window.
    pub fn count(&self) -> u64 {
        let len = (self.hi - self.lo + 1) as usize;
        let mut total = 0u64;
        for (k, &w) in self.composite.iter().enumerate() {
            let bits = if (k + 1) * 64 <= len { 64 } else { len - k * 64 };
            let valid = if bits == 64 { !0u64 } else { (1u64 << bits) - 1 };
            total += (!w & valid).count_ones() as u64;
        }
        total
    }

    /// Appends the window's primes, ascending, to `out`.
    pub fn push_primes(&self, out: &mut Vec<u64>) {
        let len = (self.hi - self.lo + 1) as usize;
        for (k, &w) in self.composite.iter().enumerate() {
            let bits = if (k + 1) * 64 <= len { 64 } else { len - k * 64 };
            let valid = if bits == 64 { !0u64 } else { (1u64 << bits) - 1 };
            let mut s = !w & valid;
            while s != 0 {
                let off = s.trailing_zeros() as u64;
                out.push(self.lo + (k as u64) * 64 + off);
                s &= s - 1;
            }
        }
    }

    pub fn primes(&self) -> Vec<u64> {
        let mut out = Vec::new();
        self.push_primes(&mut out);
        out
    }
}

/// All primes `<= limit` by classical Eratosthenes.
pub fn simple_sieve(limit: u64) -> Result<PrimeList, SieveError> {
    if limit > MAX_SIMPLE_SIEVE_LIMIT {
        return Err(SieveError::CapacityExceeded {
            limit,
            max: MAX_SIMPLE_SIEVE_LIMIT,
        });
    }
    if limit < 2 {
        return Ok(PrimeList::default());
    }
    let len = (limit + 1) as usize;
    let words = len.div_ceil(64);
    let mut composite = vec![0u64; words];
    // Evens first (bit i is the integer i here), then repair 2.
    for w in composite.iter_mut() {
        *w |= 0x5555_5555_5555_5555;
    }
    composite[0] |= 0b11; // 0 and 1 are not prime
    composite[0] &= !0b100; // 2 is prime

    let root = isqrt(limit);
    let mut p = 3u64;
    while p <= root {
        let i = p as usize;
        if composite[i >> 6] & (1 << (i & 63)) == 0 {
            let mut m = p * p;
            let step = 2 * p;
            while m <= limit {
                let j = m as usize;
                composite[j >> 6] |= 1 << (j & 63);
                m += step;
            }
        }
        p += 2;
    }

    let mut primes = Vec::with_capacity(prime_count_upper(limit));
    for (k, &w) in composite.iter().enumerate() {
        let bits = if (k + 1) * 64 <= len { 64 } else { len - k * 64 };
        let valid = if bits == 64 { !0u64 } else { (1u64 << bits) - 1 };
        let mut s = !w & valid;
        while s != 0 {
            let off = s.trailing_zeros() as u64;
            primes.push((k as u64) * 64 + off);
            s &= s - 1;
        }
    }
    Ok(PrimeList::from_sorted(primes))
}

/// Overestimate of pi(n), used to presize result vectors.
fn prime_count_upper(n: u64) -> usize {
    if n < 17 {
        return 8;
    }
    let nf = n as f64;
    (nf / nf.ln() * 1.26) as usize + 8
}

/// Primes in `[lo, hi]` using `base` (all primes up to `floor(sqrt(hi))`),
/// with the default segment size.
pub fn segmented_sieve(lo: u64, hi: u64, base: &PrimeList) -> Result<PrimeList, SieveError> {
    segmented_sieve_with(lo, hi, base, DEFAULT_SEGMENT_SIZE)
}

/// As [`segmented_sieve`] with an explicit segment size. The output is
/// identical for every segment size >= 1.
pub fn segmented_sieve_with(
    lo: u64,
    hi: u64,
    base: &PrimeList,
    segment_size: usize,
) -> Result<PrimeList, SieveError> {
    let segments = segment_plan(lo, hi, base, segment_size)?;
    let chunks: Vec<Vec<u64>> = segments
        .into_par_iter()
        .map(|(slo, shi)| SieveWindow::sieve_unchecked(slo, shi, base).primes())
        .collect();
    let mut out = Vec::with_capacity(chunks.iter().map(Vec::len).sum());
    for c in chunks {
        out.extend(c);
    }
    Ok(PrimeList::from_sorted(out))
}

/// Number of primes in `[lo, hi]`; equals `segmented_sieve(lo, hi, base).len()`.
pub fn count_primes_in(lo: u64, hi: u64, base: &PrimeList) -> Result<u64, SieveError> {
    count_primes_in_with(lo, hi, base, DEFAULT_SEGMENT_SIZE)
}

/// As [`count_primes_in`] with an explicit segment size.
pub fn count_primes_in_with(
    lo: u64,
    hi: u64,
    base: &PrimeList,
    segment_size: usize,
) -> Result<u64, SieveError> {
    let segments = segment_plan(lo, hi, base, segment_size)?;
    Ok(segments
        .into_par_iter()
        .map(|(slo, shi)| SieveWindow::sieve_unchecked(slo, shi, base).count())
        .sum())
}

/// Validates inputs and splits `[lo, hi]` into fixed-size segments.
/// `lo < 2` is normalized to 2; an empty plan is a valid empty range.
fn segment_plan(
    lo: u64,
    hi: u64,
    base: &PrimeList,
    segment_size: usize,
) -> Result<Vec<(u64, u64)>, SieveError> {
    if lo > hi {
        return Err(SieveError::InvalidRange { lo, hi });
    }
    if segment_size == 0 {
        return Err(SieveError::ZeroSegmentSize);
    }
    let lo = lo.max(2);
    if lo > hi {
        return Ok(Vec::new());
    }
    check_base(hi, base)?;
    let step = segment_size as u64;
    let mut segments = Vec::new();
    let mut s = lo;
    loop {
        let e = s.saturating_add(step - 1).min(hi);
        segments.push((s, e));
        if e == hi {
            break;
        }
        s = e + 1;
    }
    Ok(segments)
}

/// Checks that `base` covers every prime up to `floor(sqrt(hi))`.
///
/// The base is taken to be a complete prime list up to its largest element,
/// so coverage fails exactly when the next prime after that element is still
/// `<= floor(sqrt(hi))`; that prime is found by trial division and reported.
fn check_base(hi: u64, base: &PrimeList) -> Result<(), SieveError> {
    let needed = isqrt(hi);
    let pmax = base.last().copied().unwrap_or(0);
    if pmax >= needed {
        return Ok(());
    }
    let mut q = pmax + 1;
    loop {
        if q > needed {
            return Ok(());
        }
        if is_prime_trial(q) {
            return Err(SieveError::InsufficientBase {
                hi,
                missing: q,
                needed,
            });
        }
        q += 1;
    }
}

/// Trial-division primality; slow and only used for precondition checks.
pub(crate) fn is_prime_trial(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oracle_primes(lo: u64, hi: u64) -> Vec<u64> {
        (lo..=hi).filter(|&v| is_prime_trial(v)).collect()
    }

    fn base_for(hi: u64) -> PrimeList {
        simple_sieve(isqrt(hi)).unwrap()
    }

    #[test]
    fn simple_sieve_below_two_is_empty() {
        assert!(simple_sieve(0).unwrap().is_empty());
        assert!(simple_sieve(1).unwrap().is_empty());
    }

    #[test]
    fn simple_sieve_thirty() {
        let got = simple_sieve(30).unwrap();
        assert_eq!(got.values(), &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(got.len(), 10);
    }

    #[test]
    fn simple_sieve_matches_trial_division_to_3000() {
        let got = simple_sieve(3000).unwrap();
        assert_eq!(got.values(), oracle_primes(2, 3000).as_slice());
    }

    #[test]
    fn simple_sieve_million_count() {
        let got = simple_sieve(1_000_000).unwrap();
        assert_eq!(got.len(), 78_498);
        // Spot-check membership against the trial-division oracle.
        for k in (0..got.len()).step_by(997) {
            assert!(is_prime_trial(got[k]));
        }
        assert_eq!(got.count_le(100), 25);
    }

    #[test]
    fn simple_sieve_capacity_error() {
        let err = simple_sieve(MAX_SIMPLE_SIEVE_LIMIT + 1).unwrap_err();
        assert!(matches!(err, SieveError::CapacityExceeded { .. }));
    }

    #[test]
    fn segmented_all_composite_window() {
        let base = PrimeList::new(vec![2, 3]).unwrap();
        let got = segmented_sieve(14, 16, &base).unwrap();
        assert!(got.is_empty());
    }

    #[test]
    fn segmented_equals_simple_on_overlap() {
        let base = PrimeList::new(vec![2, 3, 5]).unwrap();
        let got = segmented_sieve(2, 30, &base).unwrap();
        assert_eq!(got, simple_sieve(30).unwrap());
    }

    #[test]
    fn segmented_finds_the_millionth_prime() {
        let base = base_for(15_485_870);
        let got = segmented_sieve(15_485_850, 15_485_870, &base).unwrap();
        assert!(got.values().contains(&15_485_863));
    }

    #[test]
    fn segmented_normalizes_low_end() {
        let base = PrimeList::new(vec![2, 3]).unwrap();
        assert_eq!(
            segmented_sieve(0, 10, &base).unwrap().values(),
            &[2, 3, 5, 7]
        );
        assert!(segmented_sieve(0, 1, &base).unwrap().is_empty());
    }

    #[test]
    fn segmented_rejects_reversed_range() {
        let base = PrimeList::new(vec![2, 3]).unwrap();
        assert!(matches!(
            segmented_sieve(10, 5, &base),
            Err(SieveError::InvalidRange { .. })
        ));
    }

    #[test]
    fn segmented_detects_insufficient_base() {
        // sqrt(1000) = 31; [2,3,5,7] misses 11..31.
        let base = PrimeList::new(vec![2, 3, 5, 7]).unwrap();
        match segmented_sieve(2, 1000, &base) {
            Err(SieveError::InsufficientBase {
                missing, needed, ..
            }) => {
                assert_eq!(missing, 11);
                assert_eq!(needed, 31);
            }
            other => panic!("expected InsufficientBase, got {other:?}"),
        }
        // [2,3,5,7] does cover hi = 120 (11^2 = 121 > 120).
        assert!(segmented_sieve(2, 120, &base).is_ok());
    }

    #[test]
    fn count_matches_length() {
        let base = PrimeList::new(vec![2, 3]).unwrap();
        assert_eq!(count_primes_in(2, 10, &base).unwrap(), 4);
        let base = base_for(5000);
        for (lo, hi) in [(2, 4999), (1000, 2000), (4998, 4999), (17, 17)] {
            assert_eq!(
                count_primes_in(lo, hi, &base).unwrap(),
                segmented_sieve(lo, hi, &base).unwrap().len() as u64
            );
        }
    }

    #[test]
    fn singleton_window_counts_one_iff_prime() {
        let base = base_for(200);
        for k in 2..=200 {
            let got = count_primes_in(k, k, &base).unwrap();
            assert_eq!(got == 1, is_prime_trial(k), "at k = {k}");
        }
    }

    #[test]
    fn count_over_second_million_matches_oracle() {
        let base = base_for(2_000_000);
        let oracle = simple_sieve(2_000_000).unwrap();
        let expect = oracle.count_le(2_000_000) - oracle.count_le(999_999);
        assert_eq!(
            count_primes_in(1_000_000, 2_000_000, &base).unwrap(),
            expect
        );
    }

    #[test]
    fn window_bits_match_primality() {
        let base = base_for(400);
        let w = SieveWindow::sieve(100, 400, &base).unwrap();
        for v in 100..=400 {
            assert_eq!(w.is_prime(v), is_prime_trial(v), "at v = {v}");
        }
        assert!(!w.is_prime(99));
        assert!(!w.is_prime(401));
    }

    #[test]
    fn window_below_two_is_rejected() {
        let base = PrimeList::new(vec![2, 3]).unwrap();
        assert!(matches!(
            SieveWindow::sieve(0, 1, &base),
            Err(SieveError::InvalidRange { .. })
        ));
        let w = SieveWindow::sieve(0, 10, &base).unwrap();
        assert_eq!(w.lo(), 2);
        assert_eq!(w.count(), 4);
    }

    #[test]
    fn prime_list_rejects_malformed_input() {
        assert!(PrimeList::new(vec![2, 3, 3]).is_err());
        assert!(PrimeList::new(vec![3, 2]).is_err());
        assert!(PrimeList::new(vec![1, 2]).is_err());
        assert!(PrimeList::new(vec![]).is_ok());
    }

    #[test]
    fn nth_accessor_is_one_indexed() {
        let p = simple_sieve(30).unwrap();
        assert_eq!(p.nth(1), Some(2));
        assert_eq!(p.nth(6), Some(13));
        assert_eq!(p.nth(0), None);
        assert_eq!(p.nth(11), None);
    }
}
