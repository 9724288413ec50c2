//! Deterministic primality testing over the full u128 range.
//!
//! Below 2^64 a fixed strong-pseudoprime witness set decides exactly.
//! Above it, the first thirteen primes decide exactly up to the verified
//! Sorenson-Webster bound (~3.3e24); past that a strong Lucas stage is
//! added, giving a Baillie-PSW style test with no known counterexample
//! and no randomness anywhere.

use num_bigint::BigUint;

use super::roots::isqrt;

/// Witness set valid for every n < 2^64 (Sinclair).
const WITNESS_64: [u64; 7] = [2, 325, 9375, 28178, 450775, 9780504, 1795265022];

/// First 13 primes: proven to decide primality for n < 3.317e24.
const WITNESS_13: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

const WITNESS_13_BOUND: u128 = 3_317_044_064_679_887_385_961_981;

const TINY_PRIMES: [u64; 18] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61,
];

/// a*b mod m without overflow, for any u128 modulus.
pub(crate) fn mod_mul(a: u128, b: u128, m: u128) -> u128 {
    if m <= u64::MAX as u128 {
        (a % m) * (b % m) % m
    } else {
        let prod = BigUint::from(a) * BigUint::from(b) % BigUint::from(m);
        u128::try_from(prod).expect("residue below u128 modulus")
    }
}

pub(crate) fn mod_pow(mut base: u128, mut exp: u128, m: u128) -> u128 {
    if m <= u64::MAX as u128 {
        let mut acc = 1u128;
        base %= m;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            exp >>= 1;
        }
        acc
    } else {
        let r = BigUint::from(base).modpow(&BigUint::from(exp), &BigUint::from(m));
        u128::try_from(r).expect("residue below u128 modulus")
    }
}

// a, b already reduced below m.
fn add_mod(a: u128, b: u128, m: u128) -> u128 {
    if a >= m - b && b > 0 {
        a - (m - b)
    } else {
        a + b
    }
}

fn sub_mod(a: u128, b: u128, m: u128) -> u128 {
    if a >= b {
        a - b
    } else {
        a + (m - b)
    }
}

/// Strong-pseudoprime check of odd n to base a (a reduced, a != 0).
fn is_sprp(n: u128, a: u128) -> bool {
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    let mut x = mod_pow(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mod_mul(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Jacobi symbol (a/n) for odd n > 0; a may be negative.
fn jacobi(a: i128, n: u128) -> i32 {
    debug_assert!(n % 2 == 1 && n > 0);
    let mut a = if a >= 0 {
        a as u128 % n
    } else {
        let r = a.unsigned_abs() % n;
        if r == 0 {
            0
        } else {
            n - r
        }
    };
    let mut n = n;
    let mut t = 1i32;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Strong Lucas probable-prime test with Selfridge parameters.
/// n must be odd, > 5, and not a perfect square.
fn is_strong_lucas_prp(n: u128) -> bool {
    // First D in 5, -7, 9, -11, ... with (D/n) = -1; then P = 1, Q = (1-D)/4.
    let mut d: i128 = 5;
    loop {
        match jacobi(d, n) {
            -1 => break,
            // jacobi 0 means gcd(|d|, n) > 1: composite unless d is a
            // multiple of n itself (only reachable for tiny n)
            0 if !d.unsigned_abs().is_multiple_of(n) => return false,
            _ => {}
        }
        d = if d > 0 { -(d + 2) } else { -(d - 2) };
    }
    let to_res = |v: i128| -> u128 {
        if v >= 0 {
            v as u128 % n
        } else {
            let r = v.unsigned_abs() % n;
            if r == 0 {
                0
            } else {
                n - r
            }
        }
    };
    let dd = to_res(d);
    let q0 = to_res((1 - d) / 4);

    // n + 1 = hd * 2^s with hd odd. n + 1 cannot overflow: n = u128::MAX is
    // divisible by 3 and never reaches this point.
    let np1 = n + 1;
    let s = np1.trailing_zeros();
    let hd = np1 >> s;

    // halve a residue mod odd n: (x + n)/2 without overflow
    let half = |x: u128| -> u128 {
        if x.is_multiple_of(2) {
            x / 2
        } else {
            x / 2 + n / 2 + 1
        }
    };

    // ladder over the bits of hd computing U_hd, V_hd, Q^hd (P = 1)
    let mut u = 1u128; // U_1
    let mut v = 1u128; // V_1 = P
    let mut qk = q0; // Q^1
    let bits = 128 - hd.leading_zeros();
    for i in (0..bits - 1).rev() {
        // (U_k, V_k) -> (U_2k, V_2k) = (U V, V^2 - 2 Q^k)
        u = mod_mul(u, v, n);
        v = sub_mod(mod_mul(v, v, n), add_mod(qk, qk, n), n);
        qk = mod_mul(qk, qk, n);
        if (hd >> i) & 1 == 1 {
            // (U_k, V_k) -> (U_k+1, V_k+1) = ((U + V)/2, (D U + V)/2)
            let nu = half(add_mod(u, v, n));
            let nv = half(add_mod(mod_mul(dd, u, n), v, n));
            u = nu;
            v = nv;
            qk = mod_mul(qk, q0, n);
        }
    }

    // strong condition: U_hd = 0, or V_{hd 2^r} = 0 for some 0 <= r < s
    if u == 0 || v == 0 {
        return true;
    }
    for _ in 1..s {
        v = sub_mod(mod_mul(v, v, n), add_mod(qk, qk, n), n);
        if v == 0 {
            return true;
        }
        qk = mod_mul(qk, qk, n);
    }
    false
}

/// Deterministic primality for any u128. No randomness, no probabilistic
/// false positives within the supported magnitude.
pub fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &TINY_PRIMES {
        if n.is_multiple_of(p as u128) {
            return n == p as u128;
        }
    }
    if n < 67 * 67 {
        return true;
    }
    if n <= u64::MAX as u128 {
        return WITNESS_64.iter().all(|&a| {
            let a = a as u128 % n;
            a == 0 || is_sprp(n, a)
        });
    }
    if !WITNESS_13.iter().all(|&a| is_sprp(n, a as u128)) {
        return false;
    }
    if n < WITNESS_13_BOUND {
        return true;
    }
    // beyond the verified witness bound: Lucas stage; perfect squares have
    // no D with (D/n) = -1, rule them out first
    let r = isqrt(n);
    if r * r == n {
        return false;
    }
    is_strong_lucas_prp(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_is_prime(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        let mut d = 2u64;
        while d * d <= n {
            if n.is_multiple_of(d) {
                return false;
            }
            d += 1;
        }
        true
    }

    #[test]
    fn agrees_with_trial_division_small() {
        for n in 0u64..20_000 {
            assert_eq!(is_prime(n as u128), naive_is_prime(n), "n = {n}");
        }
    }

    #[test]
    fn named_values() {
        assert!(!is_prime(1));
        assert!(!is_prime(6_436_343)); // 23^5
        assert!(is_prime(109));
        assert!(!is_prime(6_436_341)); // 3^10 * 109
        assert!(is_prime(16871));
        assert!(is_prime(4801));
    }

    #[test]
    fn strong_pseudoprimes_rejected() {
        // classic 2-SPRPs
        for n in [2047u128, 3277, 4033, 8321, 65281, 80581, 85489] {
            assert!(!is_prime(n), "{n} is composite");
        }
        // Carmichael numbers
        for n in [561u128, 1105, 1729, 2465, 41041, 825265] {
            assert!(!is_prime(n), "{n} is Carmichael");
        }
    }

    #[test]
    fn lucas_stage_matches_pseudoprime_table() {
        // The first strong Lucas pseudoprimes for the Selfridge method.
        // Matching this table exactly is a strong check of the ladder.
        let spsp = [
            5459u128, 5777, 10877, 16109, 18971, 22499, 24569, 25199, 40309, 58519, 75077, 97439,
        ];
        let mut found = Vec::new();
        for n in (3u128..100_000).step_by(2) {
            let r = isqrt(n);
            if r * r == n {
                continue;
            }
            if is_strong_lucas_prp(n) && !naive_is_prime(n as u64) {
                found.push(n);
            }
        }
        assert_eq!(found, spsp);
    }

    #[test]
    fn lucas_accepts_primes() {
        for n in (7u128..10_000).step_by(2) {
            if naive_is_prime(n as u64) {
                assert!(is_strong_lucas_prp(n), "prime {n} rejected by Lucas");
            }
        }
    }

    #[test]
    fn large_known_values() {
        assert!(is_prime((1u128 << 61) - 1));
        assert!(!is_prime((1u128 << 67) - 1)); // 193707721 * 761838257287
        assert!(is_prime((1u128 << 89) - 1));
        assert!(is_prime((1u128 << 107) - 1));
        assert!(is_prime((1u128 << 127) - 1));
        assert!(!is_prime(((1u128 << 89) - 1) * 3));
        let p = 1_099_511_627_791u128; // 2^40 + 15
        assert!(is_prime(p));
        assert!(!is_prime(p * p));
    }

    #[test]
    fn above_u64_boundary() {
        let base = u64::MAX as u128;
        assert!(is_prime(base + 14)); // 2^64 + 13
        assert!(!is_prime(base + 2));
        assert!(!is_prime(base + 4));
    }
}
