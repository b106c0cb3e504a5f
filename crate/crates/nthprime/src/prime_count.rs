//! Exact prime counting, far cheaper than sieving to the argument.
//!
//! `pi(x)` uses Meissel's combinatorial identity: with `y = floor(cbrt(x))`,
//! `a = pi(y)` and `b = pi(sqrt(x))`,
//!
//! ```text
//! pi(x) = phi(x, a) + a - 1 - sum_{a < i <= b} (pi(x / p_i) - i + 1)
//! ```
//!
//! where `phi(x, a)` is Legendre's partial-sieve function, the count of
//! `m <= x` untouched by the first `a` primes. One sieve up to roughly
//! `x^(2/3)` supplies the base primes and answers every `pi(x / p_i)` lookup,
//! so the work and memory are O(x^(2/3))-ish instead of O(x).
//!
//! `phi` itself follows the recurrence
//! `phi(x, a) = phi(x, a - 1) - phi(x / p_a, a - 1)`, with the first seven
//! prime levels answered from precomputed wheel tables and two classical
//! truncations: when `p_a >= x` only 1 survives, and when `p_a^2 >= x` the
//! survivors are exactly 1 and the primes in `(p_a, x]`.

use once_cell::sync::Lazy;
use thiserror::Error;

use crate::arith::{icbrt, isqrt};
use crate::sieve::{simple_sieve, PrimeList};

/// Name of the counting method, for report metadata.
pub const PI_METHOD: &str = "meissel";

/// Hard cap on the argument. The guaranteed domain is 10^11; up to this cap
/// the method still fits the simple-sieve budget.
pub const MAX_PI_ARGUMENT: u64 = 1_000_000_000_000;

/// Below this the answer comes from a direct sieve.
const DIRECT_LIMIT: u64 = 1 << 10;

/// Number of wheel levels (phi by table for a <= 7).
const WHEEL_LEVELS: usize = 7;
const WHEEL_PRIMES: [u64; WHEEL_LEVELS] = [2, 3, 5, 7, 11, 13, 17];

#[derive(Debug, Error)]
pub enum PrimeCountError {
    #[error("pi({x}) outside the supported domain (max {max})")]
    DomainExceeded { x: u64, max: u64 },
    #[error("phi requires at least {needed} base primes, got {have}")]
    InsufficientBase { needed: usize, have: usize },
    #[error("phi base must start with the first primes 2, 3, 5, ...; mismatch at index {index}")]
    NotInitialPrimes { index: usize },
    #[error(transparent)]
    Sieve(#[from] crate::sieve::SieveError),
}

/// Work counters for one `pi` evaluation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EvalCost {
    /// Nodes expanded in the phi recursion.
    pub phi_nodes: u64,
    /// Cells covered by the internal base-prime sieve.
    pub cells_sieved: u64,
}

/// `x` together with the exact `pi(x)` and the cost of computing it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PiEvaluation {
    pub x: u64,
    pub count: u64,
    pub cost: EvalCost,
}

/// Wheel tables: for each a <= 7, the count of integers in `[1, r]` coprime
/// to the first a primes, tabulated per residue of the primorial.
struct Wheel {
    moduli: [u64; WHEEL_LEVELS + 1],
    totients: [u64; WHEEL_LEVELS + 1],
    counts: Vec<Vec<u32>>,
}

impl Wheel {
    fn build() -> Self {
        let mut moduli = [1u64; WHEEL_LEVELS + 1];
        let mut totients = [1u64; WHEEL_LEVELS + 1];
        let mut counts: Vec<Vec<u32>> = vec![Vec::new()];
        for a in 1..=WHEEL_LEVELS {
            let m = moduli[a - 1] * WHEEL_PRIMES[a - 1];
            moduli[a] = m;
            let mut coprime = vec![true; m as usize];
            for &p in &WHEEL_PRIMES[..a] {
                let mut v = 0;
                while v < m {
                    coprime[v as usize] = false;
                    v += p;
                }
            }
            let mut table = vec![0u32; m as usize];
            let mut running = 0u32;
            for r in 0..m as usize {
                if r > 0 && coprime[r] {
                    running += 1;
                }
                table[r] = running;
            }
            // Coprime count over a full block; m itself is never coprime.
            totients[a] = u64::from(running);
            counts.push(table);
        }
        Self {
            moduli,
            totients,
            counts,
        }
    }

    /// phi(x, a) for a <= WHEEL_LEVELS.
    #[inline]
    fn phi(&self, x: u64, a: usize) -> u64 {
        if a == 0 {
            return x;
        }
        let m = self.moduli[a];
        (x / m) * self.totients[a] + u64::from(self.counts[a][(x % m) as usize])
    }
}

/// Exact prime counter; build once, query concurrently.
pub struct PrimeCounter {
    wheel: Wheel,
}

impl Default for PrimeCounter {
    fn default() -> Self {
        Self::new()
    }
}

impl PrimeCounter {
    pub fn new() -> Self {
        Self {
            wheel: Wheel::build(),
        }
    }

    /// Exact `pi(x)`.
    pub fn pi(&self, x: u64) -> Result<PiEvaluation, PrimeCountError> {
        if x > MAX_PI_ARGUMENT {
            return Err(PrimeCountError::DomainExceeded {
                x,
                max: MAX_PI_ARGUMENT,
            });
        }
        let mut cost = EvalCost::default();
        if x < 2 {
            return Ok(PiEvaluation { x, count: 0, cost });
        }
        if x <= DIRECT_LIMIT {
            let primes = simple_sieve(x)?;
            cost.cells_sieved = x + 1;
            return Ok(PiEvaluation {
                x,
                count: primes.len() as u64,
                cost,
            });
        }

        let y = icbrt(x).max(2);
        let limit = x / y; // >= x^(2/3) >= sqrt(x)
        let primes = simple_sieve(limit)?;
        cost.cells_sieved = limit + 1;
        let a = primes.count_le(y) as usize;
        let b = primes.count_le(isqrt(x)) as usize;

        let phi_val = self.phi_meissel(x, a, &primes, limit, &mut cost.phi_nodes);

        // P2: primes with exactly two factors, both above y.
        let mut p2 = 0i64;
        for i in (a + 1)..=b {
            let p = primes[i - 1];
            p2 += primes.count_le(x / p) as i64 - (i as i64 - 1);
        }

        let count = phi_val + a as i64 - 1 - p2;
        debug_assert!(count >= 0);
        Ok(PiEvaluation {
            x,
            count: count as u64,
            cost,
        })
    }

    /// Legendre's phi(x, a): integers in `[1, x]` not divisible by any of the
    /// first `a` primes. `base` must start with exactly those primes.
    pub fn phi(&self, x: u64, a: usize, base: &PrimeList) -> Result<u64, PrimeCountError> {
        if base.len() < a {
            return Err(PrimeCountError::InsufficientBase {
                needed: a,
                have: base.len(),
            });
        }
        for i in 0..a.min(WHEEL_LEVELS) {
            if base[i] != WHEEL_PRIMES[i] {
                return Err(PrimeCountError::NotInitialPrimes { index: i });
            }
        }
        let mut nodes = 0u64;
        let v = self.phi_plain(x, a, base.values(), &mut nodes);
        debug_assert!(v >= 0);
        Ok(v as u64)
    }

    /// phi recursion used inside `pi`: may answer sub-calls with `pi` lookups
    /// in the prime list, valid for arguments up to `limit`.
    fn phi_meissel(
        &self,
        x: u64,
        a: usize,
        primes: &PrimeList,
        limit: u64,
        nodes: &mut u64,
    ) -> i64 {
        *nodes += 1;
        if x == 0 {
            return 0;
        }
        if a == 0 {
            return x as i64;
        }
        if a <= WHEEL_LEVELS {
            return self.wheel.phi(x, a) as i64;
        }
        let pa = primes[a - 1];
        if x <= pa {
            return 1;
        }
        if x <= limit && (pa as u128) * (pa as u128) >= x as u128 {
            // Survivors are 1 and the primes in (p_a, x].
            return primes.count_le(x) as i64 - a as i64 + 1;
        }
        let mut res = self.wheel.phi(x, WHEEL_LEVELS) as i64;
        for i in (WHEEL_LEVELS + 1)..=a {
            let p = primes[i - 1];
            if (p as u128) * (p as u128) > x as u128 {
                // Every remaining child phi(x / p_j, j - 1) is exactly 1.
                res -= (a - i + 1) as i64;
                break;
            }
            res -= self.phi_meissel(x / p, i - 1, primes, limit, nodes);
        }
        res
    }

    /// Self-contained phi recursion for the public entry point (no pi
    /// lookups, only the wheel and the one-survivor truncation).
    fn phi_plain(&self, x: u64, a: usize, primes: &[u64], nodes: &mut u64) -> i64 {
        *nodes += 1;
        if x == 0 {
            return 0;
        }
        if a == 0 {
            return x as i64;
        }
        if a <= WHEEL_LEVELS {
            return self.wheel.phi(x, a) as i64;
        }
        if x <= primes[a - 1] {
            return 1;
        }
        let mut res = self.wheel.phi(x, WHEEL_LEVELS) as i64;
        for i in (WHEEL_LEVELS + 1)..=a {
            let p = primes[i - 1];
            if (p as u128) * (p as u128) > x as u128 {
                res -= (a - i + 1) as i64;
                break;
            }
            res -= self.phi_plain(x / p, i - 1, primes, nodes);
        }
        res
    }
}

static SHARED: Lazy<PrimeCounter> = Lazy::new(PrimeCounter::new);

/// Exact `pi(x)` through a process-wide counter.
pub fn pi(x: u64) -> Result<PiEvaluation, PrimeCountError> {
    SHARED.pi(x)
}

/// Legendre's phi through the process-wide counter.
pub fn phi(x: u64, a: usize, base: &PrimeList) -> Result<u64, PrimeCountError> {
    SHARED.phi(x, a, base)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force phi oracle: enumerate m <= x coprime to the first a primes.
    fn phi_oracle(x: u64, a: usize, primes: &[u64]) -> u64 {
        (1..=x)
            .filter(|&m| primes[..a].iter().all(|&p| m % p != 0))
            .count() as u64
    }

    fn base(limit: u64) -> PrimeList {
        simple_sieve(limit).unwrap()
    }

    #[test]
    fn pi_trivia() {
        assert_eq!(pi(0).unwrap().count, 0);
        assert_eq!(pi(1).unwrap().count, 0);
        assert_eq!(pi(2).unwrap().count, 1);
        assert_eq!(pi(100).unwrap().count, 25);
    }

    #[test]
    fn pi_matches_sieve_exhaustively_to_10k() {
        let oracle = base(10_000);
        for x in 0..=10_000u64 {
            assert_eq!(pi(x).unwrap().count, oracle.count_le(x), "at x = {x}");
        }
    }

    #[test]
    fn pi_matches_sieve_sampled_to_one_million() {
        let oracle = base(1_000_000);
        let mut x = 1_000u64;
        while x <= 1_000_000 {
            assert_eq!(pi(x).unwrap().count, oracle.count_le(x), "at x = {x}");
            assert_eq!(
                pi(x - 1).unwrap().count,
                oracle.count_le(x - 1),
                "at x = {}",
                x - 1
            );
            x = x * 13 / 9 + 7;
        }
        assert_eq!(pi(1_000_000).unwrap().count, 78_498);
    }

    #[test]
    fn pi_steps_exactly_at_primes() {
        for &p in base(500).values() {
            assert_eq!(pi(p).unwrap().count, pi(p - 1).unwrap().count + 1);
        }
        for x in [4u64, 9, 100, 1000, 10_000] {
            // composite: no step
            assert_eq!(pi(x).unwrap().count, pi(x - 1).unwrap().count);
        }
    }

    #[test]
    fn pi_domain_cap() {
        assert!(matches!(
            pi(MAX_PI_ARGUMENT + 1),
            Err(PrimeCountError::DomainExceeded { .. })
        ));
    }

    #[test]
    fn phi_zero_primes_is_identity() {
        let b = base(100);
        for x in [0u64, 1, 9, 55, 1000] {
            assert_eq!(phi(x, 0, &b).unwrap(), x);
        }
    }

    #[test]
    fn phi_odd_count() {
        let b = PrimeList::new(vec![2]).unwrap();
        assert_eq!(phi(10, 1, &b).unwrap(), 5);
        assert_eq!(phi(7, 1, &b).unwrap(), 4);
    }

    #[test]
    fn phi_wheel_example() {
        let b = PrimeList::new(vec![2, 3, 5]).unwrap();
        assert_eq!(phi(100, 3, &b).unwrap(), 26);
        assert_eq!(phi_oracle(100, 3, b.values()), 26);
    }

    #[test]
    fn phi_matches_bruteforce_oracle() {
        let b = base(100);
        for a in 0..=b.len().min(12) {
            for x in [0u64, 1, 2, 30, 97, 300, 1024, 5000] {
                assert_eq!(
                    phi(x, a, &b).unwrap(),
                    phi_oracle(x, a, b.values()),
                    "phi({x}, {a})"
                );
            }
        }
    }

    #[test]
    fn phi_satisfies_recurrence() {
        let b = base(200);
        for a in 1..=15usize {
            for x in [50u64, 210, 1000, 4096, 30030] {
                let pa = b[a - 1];
                assert_eq!(
                    phi(x, a, &b).unwrap(),
                    phi(x, a - 1, &b).unwrap() - phi(x / pa, a - 1, &b).unwrap(),
                    "recurrence at x = {x}, a = {a}"
                );
            }
        }
    }

    #[test]
    fn phi_validates_base() {
        let b = PrimeList::new(vec![2, 3]).unwrap();
        assert!(matches!(
            phi(10, 3, &b),
            Err(PrimeCountError::InsufficientBase { .. })
        ));
        let skewed = PrimeList::new(vec![3, 5, 7]).unwrap();
        assert!(matches!(
            phi(10, 2, &skewed),
            Err(PrimeCountError::NotInitialPrimes { index: 0 })
        ));
    }

    #[test]
    fn legendre_identity_on_small_x() {
        // pi(x) = phi(x, a) + a - 1 with a = pi(sqrt(x)).
        let b = base(400);
        let counter = PrimeCounter::new();
        let mut x = 10u64;
        while x <= 100_000 {
            let a = b.count_le(crate::arith::isqrt(x)) as usize;
            let lhs = counter.pi(x).unwrap().count;
            let rhs = counter.phi(x, a, &b).unwrap() + a as u64 - 1;
            assert_eq!(lhs, rhs, "identity at x = {x}");
            x = x * 7 / 3 + 1;
        }
    }

    #[test]
    fn cost_counters_are_populated() {
        let ev = pi(1_000_000).unwrap();
        assert!(ev.cost.phi_nodes > 0);
        assert!(ev.cost.cells_sieved > 0);
    }
}
