//! Exact factorization: trial division below 10^4, perfect-power reduction,
//! then a Brent-cycle rho splitter with a fixed, deterministic parameter
//! sequence. An iteration budget turns pathological inputs into
//! `BudgetExceeded` instead of nontermination.

use std::sync::OnceLock;

use crate::error::{Error, Result};

use super::primality::{is_prime, mod_mul};
use super::roots::perfect_power;
use super::sieve::simple_sieve;
use super::MAGNITUDE_CAP;

const TRIAL_LIMIT: u64 = 10_000;

fn trial_primes() -> &'static [u64] {
    static TABLE: OnceLock<Vec<u64>> = OnceLock::new();
    TABLE.get_or_init(|| simple_sieve(TRIAL_LIMIT))
}

/// Effort knobs for `factorize`. The budget counts rho iterations across
/// one whole factorization call.
#[derive(Debug, Clone, Copy)]
pub struct FactorConfig {
    pub rho_budget: u64,
}

impl Default for FactorConfig {
    fn default() -> Self {
        // every value at the scales the scans visit splits in well under this
        FactorConfig {
            rho_budget: 1 << 22,
        }
    }
}

/// Exact multiset of (prime, exponent) pairs for a positive integer.
///
/// Invariants: primes strictly increasing, every exponent >= 1, the product
/// of p^e equals n, and n = 1 has an empty factor list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    n: u128,
    factors: Vec<(u128, u32)>,
}

impl Factorization {
    pub fn n(&self) -> u128 {
        self.n
    }

    pub fn factors(&self) -> &[(u128, u32)] {
        &self.factors
    }

    /// Product of the distinct primes dividing n; 1 for n = 1.
    pub fn radical(&self) -> u128 {
        self.factors.iter().map(|&(p, _)| p).product()
    }

    pub fn largest_prime(&self) -> Option<u128> {
        self.factors.last().map(|&(p, _)| p)
    }

    /// True iff every prime factor is <= y.
    pub fn is_smooth(&self, y: u128) -> bool {
        self.largest_prime().is_none_or(|p| p <= y)
    }

    /// True iff p^k | n for every prime p | n (vacuously true for n = 1).
    pub fn is_k_powerful(&self, k: u32) -> bool {
        self.factors.iter().all(|&(_, e)| e >= k)
    }
}

/// Brent-cycle rho on odd composite n that is not a prime power.
/// Deterministic: seed 2, polynomial constants 1, 2, 3, ...
/// Returns a nontrivial divisor or spends the budget.
fn brent_rho(n: u128, budget: &mut u64) -> Result<u128> {
    let step = |x: u128, c: u128| -> u128 {
        let sq = mod_mul(x, x, n);
        if sq >= n - c {
            sq - (n - c)
        } else {
            sq + c
        }
    };
    for c in 1u128.. {
        let mut x = 2u128;
        let mut y = x;
        let mut q = 1u128;
        let mut ys = x;
        let mut g = 1u128;
        let mut r = 1u64;
        const M: u64 = 128;
        'cycle: while g == 1 {
            x = y;
            if *budget < r {
                *budget = 0;
                return Err(Error::BudgetExceeded { n });
            }
            *budget -= r;
            for _ in 0..r {
                y = step(y, c);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                let chunk = M.min(r - k);
                if *budget < chunk {
                    *budget = 0;
                    return Err(Error::BudgetExceeded { n });
                }
                *budget -= chunk;
                for _ in 0..chunk {
                    y = step(y, c);
                    q = mod_mul(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += M;
            }
            r = match r.checked_mul(2) {
                Some(r) => r,
                None => break 'cycle,
            };
        }
        if g == n {
            // backtrack one step at a time
            g = 1;
            while g == 1 {
                if *budget == 0 {
                    return Err(Error::BudgetExceeded { n });
                }
                *budget -= 1;
                ys = step(ys, c);
                g = gcd(x.abs_diff(ys), n);
            }
        }
        if g > 1 && g < n {
            return Ok(g);
        }
        // whole cycle collapsed; retry with the next polynomial
    }
    unreachable!()
}

pub fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

/// Complete exact factorization of n (1 <= n <= 2^127). Deterministic.
pub fn factorize(n: u128, cfg: &FactorConfig) -> Result<Factorization> {
    if n > MAGNITUDE_CAP {
        return Err(Error::TooLarge(n));
    }
    assert!(n >= 1, "factorize needs a positive integer");
    let mut factors: Vec<(u128, u32)> = Vec::new();
    let mut rem = n;
    for &p in trial_primes() {
        let p = p as u128;
        if p * p > rem {
            break;
        }
        if rem.is_multiple_of(p) {
            let mut e = 0u32;
            while rem.is_multiple_of(p) {
                rem /= p;
                e += 1;
            }
            factors.push((p, e));
        }
    }
    if rem > 1 {
        if rem <= (TRIAL_LIMIT as u128) * (TRIAL_LIMIT as u128) {
            // below 10^8 the residue survived trial division, so it is prime
            factors.push((rem, 1));
        } else {
            let mut budget = cfg.rho_budget;
            split_into(rem, 1, &mut budget, &mut factors).map_err(|e| match e {
                // report the original input, not the interior composite
                Error::BudgetExceeded { .. } => Error::BudgetExceeded { n },
                other => other,
            })?;
        }
    }
    factors.sort_unstable();
    // merge repeated primes coming from different rho branches
    let mut merged: Vec<(u128, u32)> = Vec::with_capacity(factors.len());
    for (p, e) in factors {
        match merged.last_mut() {
            Some((lp, le)) if *lp == p => *le += e,
            _ => merged.push((p, e)),
        }
    }
    debug_assert_eq!(
        merged
            .iter()
            .try_fold(1u128, |acc, &(p, e)| acc.checked_mul(p.checked_pow(e)?)),
        Some(n)
    );
    Ok(Factorization { n, factors: merged })
}

fn split_into(n: u128, mult: u32, budget: &mut u64, out: &mut Vec<(u128, u32)>) -> Result<()> {
    let mut work = vec![(n, mult)];
    while let Some((m, mult)) = work.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            out.push((m, mult));
            continue;
        }
        if let Some((root, k)) = perfect_power(m) {
            work.push((root, mult * k));
            continue;
        }
        let d = brent_rho(m, budget)?;
        work.push((d, mult));
        work.push((m / d, mult));
    }
    Ok(())
}

/// rad(n): product of the distinct primes dividing n.
pub fn radical(n: u128, cfg: &FactorConfig) -> Result<u128> {
    Ok(factorize(n, cfg)?.radical())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fz(n: u128) -> Factorization {
        factorize(n, &FactorConfig::default()).unwrap()
    }

    #[test]
    fn named_values() {
        assert_eq!(fz(1).factors(), &[]);
        assert_eq!(fz(65625).factors(), &[(3, 1), (5, 5), (7, 1)]);
        assert_eq!(fz(6_436_341).factors(), &[(3, 10), (109, 1)]);
        assert_eq!(fz(6_436_343).factors(), &[(23, 5)]);
    }

    #[test]
    fn radicals() {
        assert_eq!(fz(1).radical(), 1);
        assert_eq!(fz(12).radical(), 6);
        let n = 2u128 * 6_436_341 * 6_436_343;
        assert_eq!(fz(n).radical(), 15042);
    }

    #[test]
    fn splits_semiprimes_past_trial_range() {
        // both factors above the 10^4 trial bound
        let (p, q) = (104_729u128, 1_299_709u128);
        assert_eq!(fz(p * q).factors(), &[(p, 1), (q, 1)]);
        // square of a large prime goes through the power reduction
        assert_eq!(fz(p * p).factors(), &[(p, 2)]);
    }

    #[test]
    fn factors_beyond_u64() {
        // these run the wide-modulus rho path
        assert_eq!(
            fz((1u128 << 67) - 1).factors(),
            &[(193_707_721, 1), (761_838_257_287, 1)]
        );
        assert_eq!(
            fz((1u128 << 64) + 1).factors(),
            &[(274_177, 1), (67_280_421_310_721, 1)]
        );
        assert_eq!(
            fz(3u128.pow(50) + 2).factors(),
            &[(3881, 1), (87_239_707, 1), (2_120_337_014_953, 1)]
        );
        assert_eq!(
            fz((1u128 << 89) + 1).factors(),
            &[
                (3, 1),
                (179, 1),
                (62_020_897, 1),
                (18_584_774_046_020_617, 1)
            ]
        );
    }

    #[test]
    fn budget_zero_reports_exhaustion() {
        let cfg = FactorConfig { rho_budget: 0 };
        let n = 1_000_003u128 * 1_000_033;
        assert_eq!(
            factorize(n, &cfg),
            Err(Error::BudgetExceeded { n }),
            "semiprime needs rho iterations"
        );
        // but trial-division-only values still factor with zero budget
        assert!(factorize(65625, &cfg).is_ok());
    }

    #[test]
    fn too_large_rejected() {
        assert_eq!(
            factorize(MAGNITUDE_CAP + 1, &FactorConfig::default()),
            Err(Error::TooLarge(MAGNITUDE_CAP + 1))
        );
    }

    #[test]
    fn matches_naive_to_1e5() {
        for n in 1u128..=100_000 {
            let f = fz(n);
            let mut m = n;
            let mut naive = Vec::new();
            let mut d = 2u128;
            while d * d <= m {
                if m % d == 0 {
                    let mut e = 0;
                    while m % d == 0 {
                        m /= d;
                        e += 1;
                    }
                    naive.push((d, e));
                }
                d += 1;
            }
            if m > 1 {
                naive.push((m, 1));
            }
            assert_eq!(f.factors(), naive.as_slice(), "n = {n}");
        }
    }

    proptest! {
        #[test]
        fn roundtrip_u64(n in 1u64..=u64::MAX) {
            let f = fz(n as u128);
            let prod = f
                .factors()
                .iter()
                .fold(1u128, |acc, &(p, e)| acc * p.pow(e));
            prop_assert_eq!(prod, n as u128);
            for &(p, _) in f.factors() {
                prop_assert!(is_prime(p));
            }
        }

        #[test]
        fn radical_properties(n in 1u128..=1_000_000_000u128) {
            let r = fz(n).radical();
            prop_assert_eq!(n % r, 0);
            let fr = fz(r);
            prop_assert!(fr.factors().iter().all(|&(_, e)| e == 1), "radical squarefree");
            prop_assert_eq!(fr.radical(), r);
        }
    }
}
