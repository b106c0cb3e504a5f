//! Integer helpers shared across the crate.

/// Floor of the square root, exact for all u64.
pub(crate) fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x > 0 && x.checked_mul(x).is_none_or(|sq| sq > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= n) {
        x += 1;
    }
    x
}

/// Floor of the cube root, exact for all u64.
pub(crate) fn icbrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).cbrt() as u64;
    while x > 0 && x.checked_pow(3).is_none_or(|c| c > n) {
        x -= 1;
    }
    while (x + 1).checked_pow(3).is_some_and(|c| c <= n) {
        x += 1;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isqrt_edges() {
        for n in 0..2000u64 {
            let r = isqrt(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n, "isqrt({n}) = {r}");
        }
        assert_eq!(isqrt(u64::MAX), (1 << 32) - 1);
        assert_eq!(isqrt(10_000_000_000_000_000_000), 3_162_277_660);
    }

    #[test]
    fn icbrt_edges() {
        for n in 0..2000u64 {
            let r = icbrt(n);
            assert!(r * r * r <= n && (r + 1).pow(3) > n, "icbrt({n}) = {r}");
        }
        assert_eq!(icbrt(1_000_000_000_000), 10_000);
        assert_eq!(icbrt(u64::MAX), 2_642_245);
    }
}
