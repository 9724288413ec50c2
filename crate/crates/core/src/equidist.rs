//! Distribution diagnostics for the remainder and angle sequences:
//! histograms, empirical interval densities, and the Kolmogorov-Smirnov
//! distance against the uniform law.

use std::io::Write;

use crate::arith::prime_powers_up_to;
use crate::error::{Error, Result};
use crate::krep::{angle, krep, AngleSample};

/// Fixed-range histogram. Bins partition [lo, hi) into equal half-open
/// cells; a value exactly at hi lands in the last bin. Values outside the
/// range go to the overflow counters, so totals always balance.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    lo: f64,
    hi: f64,
    counts: Vec<u64>,
    total: u64,
    overflow_low: u64,
    overflow_high: u64,
}

impl Histogram {
    pub fn new(lo: f64, hi: f64, bins: usize) -> Self {
        assert!(lo < hi && bins >= 1);
        Histogram {
            lo,
            hi,
            counts: vec![0; bins],
            total: 0,
            overflow_low: 0,
            overflow_high: 0,
        }
    }

    pub fn record(&mut self, v: f64) {
        self.total += 1;
        if v < self.lo {
            self.overflow_low += 1;
        } else if v > self.hi {
            self.overflow_high += 1;
        } else {
            let bins = self.counts.len();
            let idx = ((bins as f64) * (v - self.lo) / (self.hi - self.lo)) as usize;
            self.counts[idx.min(bins - 1)] += 1;
        }
    }

    /// Component-wise sum; histograms merge like a monoid so parallel
    /// partials reduce to the single-threaded result exactly.
    pub fn merge(&mut self, other: &Histogram) {
        assert!(self.lo == other.lo && self.hi == other.hi);
        assert_eq!(self.counts.len(), other.counts.len());
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.total += other.total;
        self.overflow_low += other.overflow_low;
        self.overflow_high += other.overflow_high;
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn overflow_low(&self) -> u64 {
        self.overflow_low
    }

    pub fn overflow_high(&self) -> u64 {
        self.overflow_high
    }

    pub fn range(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn bin_edges(&self, i: usize) -> (f64, f64) {
        let w = (self.hi - self.lo) / self.counts.len() as f64;
        (self.lo + w * i as f64, self.lo + w * (i + 1) as f64)
    }
}

/// Histogram of a value stream over [lo, hi] with `bins` cells.
pub fn build_histogram(
    values: impl IntoIterator<Item = f64>,
    lo: f64,
    hi: f64,
    bins: usize,
) -> Histogram {
    let mut h = Histogram::new(lo, hi, bins);
    for v in values {
        h.record(v);
    }
    h
}

/// Fraction of samples with a <= theta <= b (closed interval).
pub fn empirical_density(samples: &[AngleSample], a: f64, b: f64) -> Result<f64> {
    assert!(0.0 <= a && a <= b && b <= std::f64::consts::PI + 1e-12);
    if samples.is_empty() {
        return Err(Error::EmptySample);
    }
    let hits = samples
        .iter()
        .filter(|s| a <= s.theta && s.theta <= b)
        .count();
    Ok(hits as f64 / samples.len() as f64)
}

/// Kolmogorov-Smirnov sup-distance between the empirical CDF of values in
/// [0, 1] and the uniform CDF.
pub fn ks_uniform(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptySample);
    }
    let mut sorted = values.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mut sup = 0.0f64;
    for (i, &v) in sorted.iter().enumerate() {
        let lo = (v - i as f64 / n).abs();
        let hi = ((i + 1) as f64 / n - v).abs();
        sup = sup.max(lo).max(hi);
    }
    Ok(sup)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UniformityMode {
    /// Remainders of every n <= x, normalized by the global interval:
    /// u_n = b_n / sqrt(x) in [-1, 1].
    AllN,
    /// Angles of prime powers p^(e>=3) <= x, as theta/pi in [0, 1].
    PrimePowers,
}

impl UniformityMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            UniformityMode::AllN => "all-n",
            UniformityMode::PrimePowers => "prime-powers",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct UniformityReport {
    pub histogram: Histogram,
    /// KS distance of the values rescaled into [0, 1] against uniform.
    pub ks: f64,
    pub sample_count: u64,
    pub mode: UniformityMode,
    pub x: u64,
}

/// Collect the remainder statistics up to x and summarize their spread.
///
/// all-n keeps the whole sequence and normalizes the remainders by the
/// global bound sqrt(x), which fills [-1, 1]; prime-powers keeps the sparse
/// angle subsequence over [0, pi], rescaled by pi.
pub fn uniformity_report(x: u64, mode: UniformityMode, bins: usize) -> UniformityReport {
    assert!(x >= 8);
    match mode {
        UniformityMode::AllN => {
            let sx = (x as f64).sqrt();
            let mut hist = Histogram::new(-1.0, 1.0, bins);
            let mut rescaled = Vec::with_capacity(x as usize);
            for n in 1..=x {
                let b = krep(n as u128, 2).b();
                let u = b as f64 / sx;
                hist.record(u);
                rescaled.push((u + 1.0) / 2.0);
            }
            let ks = ks_uniform(&rescaled).expect("x >= 8 samples");
            UniformityReport {
                histogram: hist,
                ks,
                sample_count: x,
                mode,
                x,
            }
        }
        UniformityMode::PrimePowers => {
            let mut hist = Histogram::new(0.0, 1.0, bins);
            let mut rescaled = Vec::new();
            for (p, e, _q) in prime_powers_up_to(x as u128, 3) {
                let sample = angle(p, e).expect("q <= x fits");
                let v = sample.theta / std::f64::consts::PI;
                hist.record(v);
                rescaled.push(v);
            }
            let ks = ks_uniform(&rescaled).expect("x >= 8 has the q = 8 sample");
            UniformityReport {
                histogram: hist,
                ks,
                sample_count: rescaled.len() as u64,
                mode,
                x,
            }
        }
    }
}

/// Angle histograms stratified by the base prime, for eyeballing whether
/// the distribution depends on p. No independence statistic is asserted;
/// the strata are exported as-is.
pub fn per_prime_angle_histograms(x: u64, bins: usize) -> Vec<(u128, Histogram)> {
    assert!(x >= 8);
    let mut strata: Vec<(u128, Histogram)> = Vec::new();
    for (p, e, _q) in prime_powers_up_to(x as u128, 3) {
        let v = angle(p, e).expect("q <= x fits").theta / std::f64::consts::PI;
        match strata.iter_mut().find(|(sp, _)| *sp == p) {
            Some((_, h)) => h.record(v),
            None => {
                let mut h = Histogram::new(0.0, 1.0, bins);
                h.record(v);
                strata.push((p, h));
            }
        }
    }
    strata.sort_by_key(|&(p, _)| p);
    strata
}

impl UniformityReport {
    /// CSV export: bin rows plus a trailing comment carrying the summary.
    /// The KS value prints at full precision (it feeds regression checks);
    /// bin edges use the shortest round-trip form.
    pub fn write_csv(&self, mut w: impl Write) -> std::io::Result<()> {
        writeln!(w, "bin_lo,bin_hi,count")?;
        for i in 0..self.histogram.counts().len() {
            let (lo, hi) = self.histogram.bin_edges(i);
            writeln!(w, "{},{},{}", lo, hi, self.histogram.counts()[i])?;
        }
        writeln!(
            w,
            "# total={} ks={} mode={} x={}",
            self.histogram.total(),
            self.ks,
            self.mode.as_str(),
            self.x
        )
    }
}
