//! Nearest-power representations n = m^k + b and the statistics built on
//! their remainders: the coefficient sequence of the associated Dirichlet
//! series, the Hecke-relation falsifier, the small-remainder hunter with its
//! quality ratio, prime-power angles, and the cube/square difference scan.

use num_bigint::BigUint;
use std::collections::BTreeSet;

use crate::arith::{checked_pow, factorize, nearest_root, FactorConfig, MAGNITUDE_CAP};
use crate::error::{Error, Result};
use crate::serial::sig6;

/// n = m^k + b with m the nearest integer to n^(1/k) and b the signed
/// remainder. b = 0 exactly when n is a perfect k-th power.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KRep {
    n: u128,
    k: u32,
    m: u128,
    b: i128,
}

impl KRep {
    pub fn n(&self) -> u128 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// The nearest k-th root.
    pub fn m(&self) -> u128 {
        self.m
    }

    /// Signed remainder n - m^k.
    pub fn b(&self) -> i128 {
        self.b
    }
}

/// The k-representation of n for k in {2, 3, 4}.
pub fn krep(n: u128, k: u32) -> KRep {
    assert!((2..=4).contains(&k), "k must be 2, 3 or 4");
    assert!(n >= 1);
    let m = nearest_root(n, k);
    let mk = checked_pow(m, k).expect("m^k is within one remainder of n");
    let b = if n >= mk {
        (n - mk) as i128
    } else {
        -((mk - n) as i128)
    };
    KRep { n, k, m, b }
}

/// The remainder sequence b_1..b_x for k = 2. b_1 = 0: the representation
/// 1 = 1^2 + 0 wins over the series display that starts with coefficient 1.
pub fn dirichlet_coeffs(x: u64) -> Vec<i128> {
    (1..=x).map(|n| krep(n as u128, 2).b()).collect()
}

/// A Hecke relation that failed on the remainder sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HeckeViolation {
    /// b_p * b_q != b_pq for distinct primes p < q.
    Multiplicativity {
        p: u64,
        q: u64,
        lhs: i128,
        rhs: i128,
    },
    /// b_{p^n} != b_p * b_{p^(n-1)} - b_{p^(n-2)} for a prime power p^n.
    Recursion {
        p: u64,
        n: u32,
        lhs: i128,
        rhs: i128,
    },
}

/// Enumerate every failure of the two Hecke relations among indices up to
/// `limit`. A nonempty result for limit >= 6 is the expected outcome.
pub fn hecke_falsifier(limit: u64) -> Vec<HeckeViolation> {
    assert!(limit >= 6);
    let b = dirichlet_coeffs(limit); // b[n-1] = b_n
    let bn = |n: u64| b[(n - 1) as usize];
    let primes: Vec<u64> = crate::arith::primes_in(crate::Interval::new(2, limit as u128))
        .into_iter()
        .map(|p| p as u64)
        .collect();
    let mut out = Vec::new();
    for (i, &p) in primes.iter().enumerate() {
        for &q in &primes[i + 1..] {
            let Some(pq) = p.checked_mul(q).filter(|&v| v <= limit) else {
                break;
            };
            let lhs = bn(p) * bn(q);
            let rhs = bn(pq);
            if lhs != rhs {
                out.push(HeckeViolation::Multiplicativity { p, q, lhs, rhs });
            }
        }
    }
    for &p in &primes {
        let mut n = 2u32;
        while let Some(pn) = p.checked_pow(n).filter(|&v| v <= limit) {
            let prev = p.pow(n - 1);
            let prev2 = p.pow(n - 2);
            let lhs = bn(p) * bn(prev) - bn(prev2);
            let rhs = bn(pn);
            if lhs != rhs {
                out.push(HeckeViolation::Recursion { p, n, lhs, rhs });
            }
            n += 1;
        }
    }
    out
}

/// Prime-power angle: q = p^exp, b the nearest-square remainder, and
/// theta = arccos(b / (2 sqrt q)) in [0, pi].
#[derive(Debug, Clone, PartialEq)]
pub struct AngleSample {
    pub p: u128,
    pub exp: u32,
    pub q: u128,
    pub b: i128,
    pub theta: f64,
}

/// The angle of the prime power p^exp (exp >= 3).
pub fn angle(p: u128, exp: u32) -> Result<AngleSample> {
    assert!(exp >= 3);
    let q = checked_pow(p, exp)
        .filter(|&q| q <= MAGNITUDE_CAP)
        .ok_or(Error::Overflow)?;
    let rep = krep(q, 2);
    // |b| <= 2 sqrt(q) holds exactly; the quotient can only graze +-1
    // through rounding, so clamp before arccos.
    let cos = (rep.b() as f64 / (2.0 * (q as f64).sqrt())).clamp(-1.0, 1.0);
    Ok(AngleSample {
        p,
        exp,
        q,
        b: rep.b(),
        theta: cos.acos(),
    })
}

/// Sign filter for the small-remainder hunter. The one-sided variant
/// matches set-membership counts written with 0 < b.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignMode {
    Both,
    PositiveOnly,
}

impl SignMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            SignMode::Both => "both",
            SignMode::PositiveOnly => "positive-only",
        }
    }
}

/// Exact rational threshold exponent delta = num/den in (0, 1/2).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RationalDelta {
    num: u32,
    den: u32,
}

impl RationalDelta {
    pub fn new(num: u32, den: u32) -> Option<Self> {
        (num >= 1 && 2 * num < den && den <= 10_000).then_some(RationalDelta { num, den })
    }

    pub fn num(&self) -> u32 {
        self.num
    }

    pub fn den(&self) -> u32 {
        self.den
    }
}

impl std::fmt::Display for RationalDelta {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl std::str::FromStr for RationalDelta {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let (n, d) = s
            .split_once('/')
            .ok_or_else(|| format!("expected N/D, got {s:?}"))?;
        let num: u32 = n
            .trim()
            .parse()
            .map_err(|e| format!("bad numerator: {e}"))?;
        let den: u32 = d
            .trim()
            .parse()
            .map_err(|e| format!("bad denominator: {e}"))?;
        RationalDelta::new(num, den)
            .ok_or_else(|| format!("delta must lie strictly between 0 and 1/2 with denominator <= 10000, got {num}/{den}"))
    }
}

/// A prime power whose remainder cleared the smallness threshold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallRemainderHit {
    pub p: u128,
    pub exp: u32,
    pub q: u128,
    pub b: i128,
    pub mode: SignMode,
}

/// |b|^2 <= 4 q^(1 - 2 delta), decided exactly by raising both sides to the
/// denominator: |b|^(2D) <= 4^D q^(D - 2N). No floating point near the
/// boundary.
fn within_threshold(b_abs: u128, q: u128, delta: RationalDelta) -> bool {
    let d = delta.den;
    let n = delta.num;
    let lhs = BigUint::from(b_abs).pow(2 * d);
    let rhs = BigUint::from(4u32).pow(d) * BigUint::from(q).pow(d - 2 * n);
    lhs <= rhs
}

/// All prime powers q = p^exp <= x with exp >= 3 and 0 < |b_q| <= 2 q^(1/2 - delta),
/// sorted by q. `mode` restricts the remainder sign.
pub fn small_remainder_scan(
    x: u128,
    delta: RationalDelta,
    mode: SignMode,
) -> Vec<SmallRemainderHit> {
    assert!(x >= 8);
    let mut out = Vec::new();
    for (p, exp, q) in crate::arith::prime_powers_up_to(x, 3) {
        let rep = krep(q, 2);
        let b = rep.b();
        if b == 0 {
            continue;
        }
        if mode == SignMode::PositiveOnly && b < 0 {
            continue;
        }
        if within_threshold(b.unsigned_abs(), q, delta) {
            out.push(SmallRemainderHit { p, exp, q, b, mode });
        }
    }
    out
}

/// Quality ratio of a prime-power square representation q = m^2 + b:
/// log q / log rad(q * m * |b|), with the identity recorded alongside.
#[derive(Debug, Clone, PartialEq)]
pub struct KrepQuality {
    pub rep: KRep,
    pub p: u128,
    pub exp: u32,
    pub rad: u128,
    pub quality: f64,
}

pub fn krep_quality(p: u128, exp: u32, cfg: &FactorConfig) -> Result<KrepQuality> {
    assert!(exp >= 3);
    let q = checked_pow(p, exp)
        .filter(|&q| q <= MAGNITUDE_CAP)
        .ok_or(Error::Overflow)?;
    let rep = krep(q, 2);
    if rep.b() == 0 {
        return Err(Error::PerfectPower { q });
    }
    // q, m and b may share primes; take the union of their prime sets.
    let mut primes: BTreeSet<u128> = BTreeSet::new();
    primes.insert(p);
    for &(r, _) in factorize(rep.m(), cfg)?.factors() {
        primes.insert(r);
    }
    for &(r, _) in factorize(rep.b().unsigned_abs(), cfg)?.factors() {
        primes.insert(r);
    }
    let rad = primes
        .iter()
        .try_fold(1u128, |acc, &r| acc.checked_mul(r))
        .ok_or(Error::Overflow)?;
    let quality = (q as f64).ln() / (rad as f64).ln();
    Ok(KrepQuality {
        rep,
        p,
        exp,
        rad,
        quality,
    })
}

impl KrepQuality {
    pub fn to_jsonl(&self) -> String {
        format!(
            r#"{{"p":"{}","exp":{},"q":"{}","b":"{}","quality":{}}}"#,
            self.p,
            self.exp,
            self.rep.n(),
            self.rep.b(),
            sig6(self.quality),
        )
    }
}

/// One cube/square difference record: d = x^3 - m^2 with m the nearest
/// root of x^3, and ratio = |d| / sqrt(x).
#[derive(Debug, Clone, PartialEq)]
pub struct HallRecord {
    pub x: u128,
    pub m: u128,
    pub d: i128,
    pub ratio: f64,
}

impl HallRecord {
    pub fn to_jsonl(&self) -> String {
        format!(
            r#"{{"x":"{}","m":"{}","d":"{}","ratio":{}}}"#,
            self.x,
            self.m,
            self.d,
            sig6(self.ratio),
        )
    }
}

/// Scan x = 2..x_max for small |x^3 - m^2|, skipping perfect squares;
/// sorted by ascending ratio.
pub fn hall_scan(x_max: u128) -> Result<Vec<HallRecord>> {
    assert!(x_max >= 2);
    if checked_pow(x_max, 3)
        .filter(|&c| c <= MAGNITUDE_CAP)
        .is_none()
    {
        return Err(Error::Overflow);
    }
    let mut out = Vec::new();
    for x in 2..=x_max {
        let cube = x * x * x;
        let rep = krep(cube, 2);
        if rep.b() == 0 {
            continue;
        }
        let ratio = rep.b().unsigned_abs() as f64 / (x as f64).sqrt();
        out.push(HallRecord {
            x,
            m: rep.m(),
            d: rep.b(),
            ratio,
        });
    }
    out.sort_by(|a, b| a.ratio.total_cmp(&b.ratio).then(a.x.cmp(&b.x)));
    Ok(out)
}
