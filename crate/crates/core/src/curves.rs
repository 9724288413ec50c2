//! Curve-group-order machinery: the Frobenius trace recursion and the order
//! sequences it generates, triple construction from orders, Hasse-interval
//! smooth scans, and the prime-gap cover check. A "curve" here is only a
//! (q, a1) parameter pair; no curve equation is ever constructed.

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::abc::{claim2_bound, make_triple, quality, QualityReport, Triple};
use crate::arith::{
    checked_pow, factorize, isqrt, prime_power_parts, primes_in, FactorConfig, Factorization,
    Interval, MAGNITUDE_CAP,
};
use crate::error::{Error, Result};

/// Parameters of an order sequence: q = p^e, the base-field trace a1, and
/// the genus used by interval operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrobeniusParams {
    p: u128,
    e: u32,
    q: u128,
    a1: i128,
    genus: u32,
}

/// Exact check a^2 <= 4 q without overflow at any magnitude.
fn within_weil(a: i128, q: u128) -> bool {
    let a = a.unsigned_abs();
    match (a.checked_mul(a), q.checked_mul(4)) {
        (Some(a2), Some(fourq)) => a2 <= fourq,
        (Some(_), None) => true, // 4q >= 2^128 dominates a^2 < 2^128
        (None, _) => BigUint::from(a) * a <= BigUint::from(q) * 4u32,
    }
}

impl FrobeniusParams {
    /// Validates q = p^e within the magnitude cap and a1^2 <= 4q (exact).
    pub fn new(p: u128, e: u32, a1: i128, genus: u32) -> Result<Self> {
        assert!(genus >= 1);
        let q = checked_pow(p, e)
            .filter(|&q| q <= MAGNITUDE_CAP)
            .ok_or(Error::Overflow)?;
        if q < 2 {
            return Err(Error::Overflow);
        }
        if !within_weil(a1, q) {
            return Err(Error::InvalidTrace { a1, q });
        }
        Ok(FrobeniusParams { p, e, q, a1, genus })
    }

    pub fn p(&self) -> u128 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u128 {
        self.q
    }

    pub fn a1(&self) -> i128 {
        self.a1
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }
}

/// Traces a_0..a_n and orders N_1..N_n with N_m = q^m + 1 - a_m, generated
/// by a_m = a1 a_{m-1} - q a_{m-2} from a_0 = 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderSequence {
    params: FrobeniusParams,
    traces: Vec<i128>,
    orders: Vec<u128>,
    powers: Vec<u128>,
}

/// Generate the sequence exactly for 1 <= m <= n_max.
pub fn frobenius_sequence(params: &FrobeniusParams, n_max: u32) -> Result<OrderSequence> {
    assert!(n_max >= 1);
    let q = params.q;
    let mut powers = Vec::with_capacity(n_max as usize);
    let mut qm = 1u128;
    for _ in 0..n_max {
        qm = qm
            .checked_mul(q)
            .filter(|&v| v <= MAGNITUDE_CAP)
            .ok_or(Error::Overflow)?;
        powers.push(qm);
    }
    // inside the recursion q fits i128: n_max >= 2 forces q <= 2^63.5
    let mut traces: Vec<i128> = Vec::with_capacity(n_max as usize + 1);
    traces.push(2);
    traces.push(params.a1);
    for m in 2..=n_max as usize {
        let a = params
            .a1
            .checked_mul(traces[m - 1])
            .and_then(|v| v.checked_sub((q as i128).checked_mul(traces[m - 2])?))
            .ok_or(Error::Overflow)?;
        traces.push(a);
    }
    let mut orders = Vec::with_capacity(n_max as usize);
    for m in 1..=n_max as usize {
        let a = traces[m];
        debug_assert!(within_weil(a, powers[m - 1]), "Weil bound");
        let n_m = if a >= 0 {
            powers[m - 1] + 1 - a as u128
        } else {
            powers[m - 1]
                .checked_add(1 + a.unsigned_abs())
                .ok_or(Error::Overflow)?
        };
        debug_assert!(n_m >= 1);
        orders.push(n_m);
    }
    Ok(OrderSequence {
        params: *params,
        traces,
        orders,
        powers,
    })
}

impl OrderSequence {
    pub fn params(&self) -> &FrobeniusParams {
        &self.params
    }

    /// Largest m the sequence was generated for.
    pub fn n_max(&self) -> u32 {
        self.orders.len() as u32
    }

    /// a_m for 0 <= m <= n_max.
    pub fn trace(&self, m: u32) -> i128 {
        self.traces[m as usize]
    }

    /// N_m for 1 <= m <= n_max.
    pub fn order(&self, m: u32) -> u128 {
        self.orders[m as usize - 1]
    }

    /// q^m for 1 <= m <= n_max.
    pub fn power(&self, m: u32) -> u128 {
        self.powers[m as usize - 1]
    }
}

/// The triple over {N_n, |a_n - 1|, q^n}: the two smaller parts sum to the
/// largest. a_n > 1 gives N + (a_n - 1) = q^n; a_n < 1 gives
/// q^n + (1 - a_n) = N. a_n = 1 degenerates.
pub fn triple_from_order(seq: &OrderSequence, n: u32) -> Result<Triple> {
    assert!(n >= 1 && n <= seq.n_max());
    let t = seq.trace(n);
    if t == 1 {
        return Err(Error::Degenerate);
    }
    let p = seq.params();
    let source = format!("frobenius p={} e={} a1={} n={}", p.p(), p.e(), p.a1(), n);
    if t > 1 {
        make_triple(seq.order(n), (t - 1) as u128, source)
    } else {
        make_triple(seq.power(n), (1 - t) as u128, source)
    }
}

/// The integer Hasse interval [q + 1 - floor(2g sqrt q), q + 1 + floor(2g sqrt q)],
/// clamped below at 1 (orders are positive; small q would otherwise go
/// nonpositive).
pub fn hasse_interval(q: u128, g: u32) -> Interval {
    assert!(q >= 2 && g >= 1 && q <= MAGNITUDE_CAP);
    // floor(2g sqrt q) = isqrt(4 g^2 q), exact in integers
    let half_width = match (4u128 * g as u128 * g as u128).checked_mul(q) {
        Some(v) => isqrt(v),
        None => {
            let v = BigUint::from(q) * 4u32 * g * g;
            u128::try_from(v.sqrt()).expect("sqrt fits: q <= 2^127")
        }
    };
    let center = q + 1;
    let lo = center.saturating_sub(half_width).max(1);
    let hi = center
        .checked_add(half_width)
        .expect("q <= 2^127 leaves headroom");
    Interval::new(lo, hi)
}

/// Counters for candidates a scan rejected.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct SkipStats {
    pub degenerate: u64,
    pub not_coprime: u64,
    pub overflow: u64,
    pub budget: u64,
}

impl SkipStats {
    fn absorb(&mut self, other: SkipStats) {
        self.degenerate += other.degenerate;
        self.not_coprime += other.not_coprime;
        self.overflow += other.overflow;
        self.budget += other.budget;
    }

    fn count(&mut self, err: &Error) {
        match err {
            Error::Degenerate => self.degenerate += 1,
            Error::NotCoprime { .. } => self.not_coprime += 1,
            Error::BudgetExceeded { .. } => self.budget += 1,
            _ => self.overflow += 1,
        }
    }

    pub fn total(&self) -> u64 {
        self.degenerate + self.not_coprime + self.overflow + self.budget
    }
}

/// One order the Hasse scan kept.
#[derive(Debug, Clone, PartialEq)]
pub struct HasseHit {
    pub order: u128,
    pub factorization: Factorization,
    pub report: QualityReport,
}

/// Outcome of `scan_hasse_smooth`.
#[derive(Debug, Clone, PartialEq)]
pub struct HasseScan {
    pub q: u128,
    pub genus: u32,
    pub hits: Vec<HasseHit>,
    pub skipped: SkipStats,
    /// Orders with rad(N)^3 <= q whose index fell below the heuristic
    /// bound minus 0.01. Logged, never asserted.
    pub soft_diag_failures: u64,
}

/// Scan the Hasse interval of q for y-smooth orders (or orders with
/// radical <= rad_cap), convert each into a triple with t = q + 1 - N, and
/// grade them. Results sorted by descending gamma.
pub fn scan_hasse_smooth(q: u128, g: u32, y: u128, rad_cap: u128, cfg: &FactorConfig) -> HasseScan {
    assert!((2..=MAGNITUDE_CAP).contains(&q));
    let (_, exp) = prime_power_parts(q).expect("q must be a prime power");
    let iv = hasse_interval(q, g);
    assert!(iv.width() <= 100_000_000, "interval too wide to scan");
    let bound = claim2_bound(exp as u64);
    let candidates: Vec<u128> = (iv.lo()..=iv.hi()).collect();
    let per: Vec<(Option<HasseHit>, SkipStats, u64)> = candidates
        .par_iter()
        .map(|&n_val| {
            let mut skipped = SkipStats::default();
            let mut soft = 0u64;
            let f = match factorize(n_val, cfg) {
                Ok(f) => f,
                Err(e) => {
                    skipped.count(&e);
                    return (None, skipped, soft);
                }
            };
            if !(f.is_smooth(y) || f.radical() <= rad_cap) {
                return (None, skipped, soft);
            }
            // t = q + 1 - N stays tiny: N lies in the Hasse interval
            let t: i128 = if q + 1 >= n_val {
                (q + 1 - n_val) as i128
            } else {
                -((n_val - q - 1) as i128)
            };
            let source = format!("hasse-scan q={q} g={g}");
            let triple = if t == 1 {
                Err(Error::Degenerate)
            } else if t > 1 {
                make_triple(n_val, (t - 1) as u128, source)
            } else {
                make_triple(q, (1 - t) as u128, source)
            };
            let report = triple.and_then(|t| quality(&t, cfg));
            match report {
                Ok(report) => {
                    // heuristic chain: very smooth radicals should push the
                    // index above the heuristic curve.
                    let rad_n = f.radical();
                    let very_smooth = checked_pow(rad_n, 3).is_some_and(|r3| r3 <= q);
                    if very_smooth && report.gamma <= bound - 0.01 {
                        soft += 1;
                    }
                    (
                        Some(HasseHit {
                            order: n_val,
                            factorization: f,
                            report,
                        }),
                        skipped,
                        soft,
                    )
                }
                Err(e) => {
                    skipped.count(&e);
                    (None, skipped, soft)
                }
            }
        })
        .collect();
    let mut hits = Vec::new();
    let mut skipped = SkipStats::default();
    let mut soft_diag_failures = 0;
    for (hit, s, soft) in per {
        if let Some(h) = hit {
            hits.push(h);
        }
        skipped.absorb(s);
        soft_diag_failures += soft;
    }
    hits.sort_by(|a, b| {
        b.report
            .gamma
            .total_cmp(&a.report.gamma)
            .then(a.order.cmp(&b.order))
    });
    HasseScan {
        q,
        genus: g,
        hits,
        skipped,
        soft_diag_failures,
    }
}

/// A consecutive-prime gap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GapRecord {
    pub p: u128,
    pub next: u128,
    pub gap: u128,
}

/// Outcome of the Hasse-interval cover check over primes up to x.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverReport {
    pub x: u128,
    pub genus: u32,
    pub covered: bool,
    /// Largest gap among consecutive primes <= x.
    pub max_gap: Option<GapRecord>,
    /// Gap maximizing gap/sqrt(p), with the ratio for display.
    pub max_ratio: Option<(GapRecord, f64)>,
    pub failures: Vec<GapRecord>,
}

/// Check gap(p_k, p_{k+1}) <= 4 g sqrt(p_k) for all consecutive primes with
/// p_{k+1} <= x, comparing gap^2 <= 16 g^2 p_k in exact integers. Prime q
/// only: prime-power intervals would only widen the cover.
pub fn cover_check(x: u128, g: u32) -> CoverReport {
    assert!(x >= 3);
    let primes = primes_in(Interval::new(2, x));
    let mut max_gap: Option<GapRecord> = None;
    let mut max_ratio: Option<GapRecord> = None;
    let mut failures = Vec::new();
    for w in primes.windows(2) {
        let rec = GapRecord {
            p: w[0],
            next: w[1],
            gap: w[1] - w[0],
        };
        if max_gap.is_none_or(|m| rec.gap > m.gap) {
            max_gap = Some(rec);
        }
        // ratio comparison gap^2 / p done exactly: g1^2 p2 > g2^2 p1
        if max_ratio.is_none_or(|m| rec.gap * rec.gap * m.p > m.gap * m.gap * rec.p) {
            max_ratio = Some(rec);
        }
        let sixteen_g2 = 16u128 * g as u128 * g as u128;
        if rec.gap * rec.gap > sixteen_g2 * rec.p {
            failures.push(rec);
        }
    }
    CoverReport {
        x,
        genus: g,
        covered: failures.is_empty(),
        max_gap,
        max_ratio: max_ratio.map(|r| (r, r.gap as f64 / (r.p as f64).sqrt())),
        failures,
    }
}

/// Outcome of the (q, a1, n) enumeration.
#[derive(Debug, Clone, PartialEq)]
pub struct FrobeniusScan {
    pub reports: Vec<QualityReport>,
    pub skipped: SkipStats,
    /// (q, a1, n) combinations visited.
    pub candidates: u64,
}

/// Enumerate every prime power q <= q_max, every trace a1 with a1^2 <= 4q,
/// and every n <= n_max (dropping n where q^n passes the cap), emitting the
/// quality report whenever gamma >= gamma_min. Deterministic order
/// (q asc, a1 asc, n asc).
pub fn enumerate_triples(
    q_max: u128,
    n_max: u32,
    gamma_min: f64,
    cfg: &FactorConfig,
) -> FrobeniusScan {
    scan_traces(q_max, n_max, Some(gamma_min), false, cfg)
}

/// The a1 = 0 slice of the enumeration with no quality threshold, for
/// studying how the supersingular indices distribute around 1.
pub fn supersingular_scan(q_max: u128, n_max: u32, cfg: &FactorConfig) -> FrobeniusScan {
    scan_traces(q_max, n_max, None, true, cfg)
}

fn scan_traces(
    q_max: u128,
    n_max: u32,
    gamma_min: Option<f64>,
    supersingular_only: bool,
    cfg: &FactorConfig,
) -> FrobeniusScan {
    assert!(q_max >= 2 && n_max >= 1);
    let mut pairs: Vec<(u128, u32, u128, i128)> = Vec::new();
    for (p, e, q) in crate::arith::prime_powers_up_to(q_max, 1) {
        if supersingular_only {
            pairs.push((p, e, q, 0));
        } else {
            let half = isqrt(4 * q); // floor(2 sqrt q); 4q fits: q <= q_max <= 2^125
            for a1 in -(half as i128)..=(half as i128) {
                if within_weil(a1, q) {
                    pairs.push((p, e, q, a1));
                }
            }
        }
    }
    let per: Vec<(Vec<QualityReport>, SkipStats, u64)> = pairs
        .par_iter()
        .map(|&(p, e, q, a1)| {
            let mut reports = Vec::new();
            let mut skipped = SkipStats::default();
            let mut candidates = 0u64;
            let params = FrobeniusParams::new(p, e, a1, 1).expect("a1 pre-filtered");
            // largest n with q^n under the cap
            let mut feasible = 0u32;
            let mut qm = 1u128;
            while feasible < n_max {
                match qm.checked_mul(q).filter(|&v| v <= MAGNITUDE_CAP) {
                    Some(v) => {
                        qm = v;
                        feasible += 1;
                    }
                    None => break,
                }
            }
            skipped.overflow += (n_max - feasible) as u64;
            candidates += n_max as u64;
            if feasible == 0 {
                return (reports, skipped, candidates);
            }
            let seq = frobenius_sequence(&params, feasible).expect("powers pre-checked");
            for n in 1..=feasible {
                match triple_from_order(&seq, n).and_then(|t| quality(&t, cfg)) {
                    Ok(report) => {
                        if gamma_min.is_none_or(|g| report.gamma >= g) {
                            reports.push(report);
                        }
                    }
                    Err(e) => skipped.count(&e),
                }
            }
            (reports, skipped, candidates)
        })
        .collect();
    let mut out = FrobeniusScan {
        reports: Vec::new(),
        skipped: SkipStats::default(),
        candidates: 0,
    };
    for (reports, skipped, candidates) in per {
        out.reports.extend(reports);
        out.skipped.absorb(skipped);
        out.candidates += candidates;
    }
    out
}
