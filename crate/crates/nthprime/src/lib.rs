//! Computing the nth prime three ways: binary search over an exact
//! prime-counting oracle, sieving to an explicit upper bound, and sieving a
//! narrow window around the inverse logarithmic integral.
//!
//! The building blocks are exposed as modules:
//!
//! * [`sieve`] — simple and segmented sieves of Eratosthenes.
//! * [`prime_count`] — exact pi(x) via the Meissel combinatorial method.
//! * [`bounds`] — Dusart's search interval for p_n and the interval-size
//!   threshold below which window sieving wins.
//! * [`logint`] — li(x) to high precision and its inverse.
//! * [`nth_prime`] — the three nth-prime algorithms, the Cramer window
//!   construction, and an empirical Schoenfeld-inequality checker.
//! * [`dd`] — the double-double arithmetic backing `logint`.
//!
//! ```
//! let r = nthprime::nth_prime_cramer(1_000).unwrap();
//! assert_eq!(r.prime, 7_919);
//! assert_eq!(r.pi_evals, 1);
//! assert_eq!(nthprime::pi(7_919).unwrap().count, 1_000);
//! ```

pub mod bounds;
pub mod dd;
pub mod logint;
pub mod nth_prime;
pub mod prime_count;
pub mod sieve;

pub(crate) mod arith;

pub use bounds::{dusart_interval, threshold_b, Interval};
pub use logint::{li, li_inverse, AlphaResult, LiValue};
pub use nth_prime::{
    cramer_window, nth_prime_binary_search, nth_prime_cramer, nth_prime_sieve_bound,
    schoenfeld_check, Algorithm, NthPrimeResult,
};
pub use prime_count::{phi, pi, PiEvaluation, PrimeCounter};
pub use sieve::{count_primes_in, segmented_sieve, simple_sieve, PrimeList};
