//! Randomized invariants across the library, checked against a shared sieve
//! oracle.

use once_cell::sync::Lazy;
use proptest::prelude::*;

use nthprime::bounds::{dusart_interval, threshold_b};
use nthprime::logint::{li, li_inverse};
use nthprime::prime_count::{phi, pi};
use nthprime::sieve::{
    count_primes_in, segmented_sieve, segmented_sieve_with, simple_sieve, PrimeList,
};

static ORACLE: Lazy<PrimeList> = Lazy::new(|| simple_sieve(200_000).expect("within budget"));
static BASE: Lazy<PrimeList> = Lazy::new(|| simple_sieve(450).expect("within budget"));

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn segmented_equals_filtered_simple(lo in 0u64..100_000, span in 0u64..4_000) {
        let hi = lo + span;
        let got = segmented_sieve(lo, hi, &BASE).unwrap();
        let expect: Vec<u64> = ORACLE
            .values()
            .iter()
            .copied()
            .filter(|&p| p >= lo && p <= hi)
            .collect();
        prop_assert_eq!(got.values(), expect.as_slice());
    }

    #[test]
    fn segment_size_never_changes_output(
        lo in 0u64..50_000,
        span in 0u64..3_000,
        seg in 1usize..5_000,
    ) {
        let hi = lo + span;
        let a = segmented_sieve_with(lo, hi, &BASE, seg).unwrap();
        let b = segmented_sieve(lo, hi, &BASE).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn segments_concatenate(a in 2u64..40_000, left in 0u64..2_000, right in 1u64..2_000) {
        let m = a + left;
        let b = m + right;
        let mut glued = segmented_sieve(a, m, &BASE).unwrap().into_vec();
        glued.extend(segmented_sieve(m + 1, b, &BASE).unwrap().values());
        let whole = segmented_sieve(a, b, &BASE).unwrap();
        prop_assert_eq!(glued, whole.into_vec());
    }

    #[test]
    fn count_equals_materialized_length(lo in 0u64..100_000, span in 0u64..3_000) {
        let hi = lo + span;
        let count = count_primes_in(lo, hi, &BASE).unwrap();
        let listed = segmented_sieve(lo, hi, &BASE).unwrap();
        prop_assert_eq!(count, listed.len() as u64);
    }

    #[test]
    fn pi_matches_sieve_counts(x in 0u64..200_000) {
        prop_assert_eq!(pi(x).unwrap().count, ORACLE.count_le(x));
    }

    #[test]
    fn phi_recurrence_holds(x in 0u64..100_000, a in 1usize..30) {
        let pa = BASE[a - 1];
        let lhs = phi(x, a, &BASE).unwrap();
        let rhs = phi(x, a - 1, &BASE).unwrap() - phi(x / pa, a - 1, &BASE).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn li_is_monotone(x in 2.0f64..1e9, bump in 1.0f64..1e6) {
        let a = li(x, 1e-6).unwrap().value;
        let b = li(x + bump, 1e-6).unwrap().value;
        prop_assert!(b > a);
    }

    #[test]
    fn li_inverse_round_trips(n in 6u64..1_000_000, tol in 0.01f64..2.0) {
        let r = li_inverse(n, tol).unwrap();
        prop_assert!(r.residual <= tol);
        // Re-evaluate li at alpha through the public surface.
        let back = li(r.alpha, 1e-6).unwrap().value.to_f64();
        prop_assert!((back - n as f64).abs() <= tol + 1e-6);
    }

    #[test]
    fn dusart_interval_contains_oracle_prime(n in 6u64..17_000) {
        let iv = dusart_interval(n).unwrap();
        let p = ORACLE.nth(n).unwrap() as f64;
        prop_assert!(iv.lo < p && p < iv.hi);
        prop_assert!((iv.width() - n as f64).abs() <= 1e-9 * iv.hi);
    }

    #[test]
    fn threshold_scales_inversely_with_c(n in 3u64..100_000_000, c in 0.01f64..100.0) {
        let b1 = threshold_b(n, 1.0).unwrap();
        let bc = threshold_b(n, c).unwrap();
        prop_assert!((bc * c - b1).abs() <= 1e-12 * b1.abs() * c.max(1.0));
    }
}
