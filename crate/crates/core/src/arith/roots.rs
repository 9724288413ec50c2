//! Integer k-th roots by pure integer arithmetic. Floating-point roots
//! misround near perfect powers at 2^63 scale, so nothing here touches f64.

use num_bigint::BigUint;

/// `base^exp` when it fits in a `u128`.
pub fn checked_pow(base: u128, exp: u32) -> Option<u128> {
    base.checked_pow(exp)
}

/// Floor of the square root. Newton iteration seeded from the bit length;
/// the seed 2^ceil(bits/2) is always >= sqrt(n) so the sequence decreases
/// monotonically onto the floor.
pub fn isqrt(n: u128) -> u128 {
    if n <= u64::MAX as u128 {
        return isqrt_u64(n as u64) as u128;
    }
    let bits = 128 - n.leading_zeros();
    let mut x = 1u128 << bits.div_ceil(2);
    loop {
        let y = (x + n / x) >> 1;
        if y >= x {
            return x;
        }
        x = y;
    }
}

// 64-bit divisions are hardware-backed; the scans call this tens of
// millions of times.
fn isqrt_u64(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let bits = 64 - n.leading_zeros();
    let mut x = 1u64 << bits.div_ceil(2);
    loop {
        let y = (x + n / x) >> 1;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// Floor of n^(1/k), k >= 1. Binary search with overflow-checked powers
/// for k >= 3; Newton for the square root.
pub fn floor_nth_root(n: u128, k: u32) -> u128 {
    assert!(k >= 1, "root index must be positive");
    match k {
        1 => n,
        2 => isqrt(n),
        _ => {
            if n < 2 {
                return n;
            }
            let bits = 128 - n.leading_zeros();
            // invariant: lo^k <= n < hi^k
            let mut lo = 1u128;
            let mut hi = 1u128 << (bits / k + 1);
            while lo + 1 < hi {
                let mid = lo + (hi - lo) / 2;
                match checked_pow(mid, k) {
                    Some(p) if p <= n => lo = mid,
                    _ => hi = mid,
                }
            }
            lo
        }
    }
}

/// Nearest-integer k-th root: the m minimizing |n - m^k|, ties broken
/// toward the larger m. For k = 2 a tie is impossible over the integers
/// (it would force 2n = m^2 + (m+1)^2, which is odd).
pub fn nearest_root(n: u128, k: u32) -> u128 {
    let r = floor_nth_root(n, k);
    let low_diff = n - checked_pow(r, k).expect("r^k <= n fits");
    match checked_pow(r + 1, k) {
        Some(p) => {
            if p - n <= low_diff {
                r + 1
            } else {
                r
            }
        }
        None => {
            // (r+1)^k exceeds u128; compare the two distances exactly.
            let high_diff = BigUint::from(r + 1).pow(k) - BigUint::from(n);
            if high_diff <= BigUint::from(low_diff) {
                r + 1
            } else {
                r
            }
        }
    }
}

/// Writes n as r^k with the smallest nontrivial exponent, if n is a
/// perfect power. n = 1 and n = 0 report nothing. The root itself may
/// still be a power (2^30 reports (2^15, 2)).
pub fn perfect_power(n: u128) -> Option<(u128, u32)> {
    if n < 4 {
        return None;
    }
    let bits = 128 - n.leading_zeros();
    for k in 2..=bits {
        let r = floor_nth_root(n, k);
        if r < 2 {
            break;
        }
        if checked_pow(r, k) == Some(n) {
            return Some((r, k));
        }
    }
    None
}

/// Decomposes n = p^e with p prime (e = 1 for primes), or reports that n
/// is not a prime power. Reduces repeated powers fully, so composite
/// exponents like 2^30 resolve to (2, 30).
pub fn prime_power_parts(n: u128) -> Option<(u128, u32)> {
    if super::is_prime(n) {
        return Some((n, 1));
    }
    let mut base = n;
    let mut exp = 1u32;
    while let Some((r, k)) = perfect_power(base) {
        base = r;
        exp *= k;
    }
    (exp > 1 && super::is_prime(base)).then_some((base, exp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn isqrt_small() {
        for n in 0u128..=10_000 {
            let r = isqrt(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n, "isqrt({n}) = {r}");
        }
    }

    #[test]
    fn isqrt_extremes() {
        assert_eq!(isqrt(u128::MAX), (1u128 << 64) - 1);
        let r = isqrt(1u128 << 126);
        assert_eq!(r, 1u128 << 63);
    }

    #[test]
    fn nearest_root_examples() {
        assert_eq!(nearest_root(16, 2), 4);
        assert_eq!(nearest_root(8, 2), 3);
        assert_eq!(nearest_root(12, 2), 3);
        assert_eq!(nearest_root(13, 2), 4);
        assert_eq!(nearest_root(1, 2), 1);
        assert_eq!(nearest_root(1, 4), 1);
        // cube tie at 0 and 1? 0 < 1: |1 - 1| = 0 exact power
        assert_eq!(nearest_root(8, 3), 2);
        assert_eq!(nearest_root(9, 3), 2);
    }

    #[test]
    fn ties_cannot_occur() {
        // m^k + (m+1)^k is odd (one base even, one odd), so 2n = m^k + (m+1)^k
        // has no integer solution and the upward tie rule is never exercised.
        for n in 1u128..=5_000 {
            for k in 2..=4 {
                let m = nearest_root(n, k);
                let lo = checked_pow(m.saturating_sub(1), k).unwrap();
                let hi = checked_pow(m + 1, k).unwrap();
                let d = |p: u128| n.abs_diff(p);
                let dm = d(checked_pow(m, k).unwrap());
                if m > 1 {
                    assert_ne!(dm, d(lo), "tie at n={n} k={k}");
                }
                assert_ne!(dm, d(hi), "tie at n={n} k={k}");
            }
        }
    }

    #[test]
    fn perfect_power_detects() {
        assert_eq!(perfect_power(6436343), Some((23, 5)));
        assert_eq!(perfect_power(576), Some((24, 2)));
        assert_eq!(perfect_power(64), Some((8, 2)));
        assert_eq!(perfect_power(12), None);
        assert_eq!(perfect_power(1), None);
        assert_eq!(perfect_power(2), None);
    }

    #[test]
    fn prime_power_parts_reduces_fully() {
        assert_eq!(prime_power_parts(2), Some((2, 1)));
        assert_eq!(prime_power_parts(4), Some((2, 2)));
        // composite exponents whose smallest root is itself a power
        assert_eq!(prime_power_parts(1u128 << 30), Some((2, 30)));
        assert_eq!(prime_power_parts(1u128 << 15), Some((2, 15)));
        assert_eq!(prime_power_parts(3u128.pow(9)), Some((3, 9)));
        assert_eq!(prime_power_parts(6436343), Some((23, 5)));
        assert_eq!(prime_power_parts(1), None);
        assert_eq!(prime_power_parts(12), None);
        assert_eq!(prime_power_parts(576), None); // 24^2 = 2^6 3^2
        assert_eq!(prime_power_parts(36), None);
    }

    proptest! {
        #[test]
        fn floor_root_is_exact(n in any::<u128>(), k in 1u32..=6) {
            let r = floor_nth_root(n, k);
            if let Some(p) = checked_pow(r, k) {
                prop_assert!(p <= n);
            } else {
                prop_assert!(false, "floor root power must fit");
            }
            // when (r+1)^k overflows u128 it certainly exceeds n
            if let Some(p) = checked_pow(r + 1, k) {
                prop_assert!(p > n);
            }
        }

        #[test]
        fn nearest_root_minimizes(n in 1u128..=u64::MAX as u128, k in 2u32..=4) {
            let m = nearest_root(n, k);
            let at = |x: u128| -> i128 {
                let p = checked_pow(x, k).map(|p| p as i128).unwrap_or(i128::MAX);
                (n as i128 - p).abs()
            };
            let d = at(m);
            if m > 1 {
                prop_assert!(d <= at(m - 1));
            }
            prop_assert!(d <= at(m + 1));
        }
    }
}
