//! Prime and prime-power enumeration: a plain Eratosthenes sieve for base
//! primes and a segmented pass for arbitrary intervals.

use super::roots::{checked_pow, floor_nth_root, isqrt};
use super::Interval;

/// All primes <= limit, ascending.
pub(crate) fn simple_sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for p in 2..=limit {
        if !composite[p] {
            primes.push(p as u64);
            let mut m = p * p;
            while m <= limit {
                composite[m] = true;
                m += p;
            }
        }
    }
    primes
}

/// All primes p with iv.lo <= p <= iv.hi, ascending. Segmented so the
/// interval can sit far from the origin.
pub fn primes_in(iv: Interval) -> Vec<u128> {
    let hi = iv.hi();
    if hi < 2 {
        return Vec::new();
    }
    assert!(
        hi <= u64::MAX as u128,
        "prime enumeration is supported up to 2^64"
    );
    let hi = hi as u64;
    let lo = (iv.lo().max(2)) as u64;
    let base = simple_sieve(isqrt(hi as u128) as u64);
    let mut out = Vec::new();
    const SEG: u64 = 1 << 20;
    let mut start = lo;
    loop {
        let end = start.saturating_add(SEG - 1).min(hi);
        let len = (end - start + 1) as usize;
        let mut composite = vec![false; len];
        for &p in &base {
            if p * p > end {
                break;
            }
            let first = (start.div_ceil(p) * p).max(p * p);
            let mut m = first;
            while m <= end {
                composite[(m - start) as usize] = true;
                m += p;
            }
        }
        for (i, &c) in composite.iter().enumerate() {
            if !c {
                let v = start + i as u64;
                if v >= 2 {
                    out.push(v as u128);
                }
            }
        }
        if end == hi {
            break;
        }
        start = end + 1;
    }
    out
}

/// All (p, e, p^e) with p prime, e >= min_exp and p^e <= x, sorted by p^e.
pub fn prime_powers_up_to(x: u128, min_exp: u32) -> Vec<(u128, u32, u128)> {
    assert!(min_exp >= 1);
    let mut out = Vec::new();
    let mut e = min_exp;
    while checked_pow(2, e).is_some_and(|v| v <= x) {
        let bound = floor_nth_root(x, e);
        for p in primes_in(Interval::new(2, bound)) {
            let q = checked_pow(p, e).expect("p <= x^(1/e)");
            debug_assert!(q <= x);
            out.push((p, e, q));
        }
        e += 1;
    }
    out.sort_unstable_by_key(|&(_, _, q)| q);
    out
}
