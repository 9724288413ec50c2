//! Exact integer arithmetic kernel: primality, factorization, radicals,
//! smoothness, powerful-number tests, nearest integer roots, and prime
//! enumeration. Everything here is a pure function of its inputs.

mod factor;
mod primality;
mod roots;
mod sieve;
mod smooth;

pub use factor::{factorize, gcd, radical, FactorConfig, Factorization};
pub use primality::is_prime;
pub use roots::{
    checked_pow, floor_nth_root, isqrt, nearest_root, perfect_power, prime_power_parts,
};
pub use sieve::{prime_powers_up_to, primes_in};
pub use smooth::{count_k_powerful_in, count_smooth_in, is_k_powerful, is_smooth};

/// Inputs above this magnitude are rejected instead of silently overflowing.
pub const MAGNITUDE_CAP: u128 = 1 << 127;

/// A closed integer interval [lo, hi].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Interval {
    lo: u128,
    hi: u128,
}

impl Interval {
    pub fn new(lo: u128, hi: u128) -> Self {
        assert!(lo <= hi, "interval needs lo <= hi");
        Interval { lo, hi }
    }

    pub fn lo(&self) -> u128 {
        self.lo
    }

    pub fn hi(&self) -> u128 {
        self.hi
    }

    pub fn width(&self) -> u128 {
        self.hi - self.lo + 1
    }

    pub fn contains(&self, n: u128) -> bool {
        self.lo <= n && n <= self.hi
    }
}
