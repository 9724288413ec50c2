//! Error type shared across the crate.

/// Errors produced by the arithmetic kernels and the scan operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// The configured factoring effort was exhausted before `n` split.
    /// Callers running open-ended searches skip the candidate and count it.
    #[error("factoring budget exhausted on {n}")]
    BudgetExceeded { n: u128 },

    /// Input exceeds the supported magnitude (2^127).
    #[error("{0} exceeds the 2^127 magnitude cap")]
    TooLarge(u128),

    /// An intermediate value left the supported range.
    #[error("arithmetic overflow past the 2^127 magnitude cap")]
    Overflow,

    /// Triple construction needs coprime summands.
    #[error("summands {x} and {y} share a common factor")]
    NotCoprime { x: u128, y: u128 },

    /// Triple construction got a zero summand (trace t = 1 collapses b to 0).
    #[error("degenerate triple: zero summand")]
    Degenerate,

    /// Base-field trace outside the Hasse bound a1^2 <= 4q.
    #[error("trace {a1} violates a1^2 <= 4q for q = {q}")]
    InvalidTrace { a1: i128, q: u128 },

    /// The k-representation remainder is zero, so the quality index is undefined.
    #[error("{q} is a perfect power; remainder is zero")]
    PerfectPower { q: u128 },

    /// A statistic was requested over an empty sample.
    #[error("empty sample")]
    EmptySample,
}

pub type Result<T> = std::result::Result<T, Error>;
