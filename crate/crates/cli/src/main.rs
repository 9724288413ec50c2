//! Command-line front end: quality grading, table auditing, the curve-order
//! and k-representation scans, and the distribution exports. JSONL or CSV
//! goes to --out (default stdout); summaries go to stderr.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicBool, Ordering};

use clap::{Parser, Subcommand, ValueEnum};

use abckit::arith::{isqrt, prime_power_parts};
use abckit::curves::{
    cover_check, enumerate_triples, scan_hasse_smooth, supersingular_scan, CoverReport,
    FrobeniusScan,
};
use abckit::equidist::{uniformity_report, UniformityMode};
use abckit::krep::{angle, krep, krep_quality, small_remainder_scan, RationalDelta, SignMode};
use abckit::serial::sig6;
use abckit::table::{audit_series, audit_table};
use abckit::{make_triple, quality, Error, FactorConfig};

static INTERRUPTED: AtomicBool = AtomicBool::new(false);

extern "C" fn flag_interrupt(_: libc::c_int) {
    INTERRUPTED.store(true, Ordering::SeqCst);
}

fn install_signal_handlers() {
    let handler = flag_interrupt as extern "C" fn(libc::c_int) as libc::sighandler_t;
    unsafe {
        libc::signal(libc::SIGINT, handler);
        libc::signal(libc::SIGTERM, handler);
    }
}

fn interrupted() -> bool {
    INTERRUPTED.load(Ordering::SeqCst)
}

#[derive(Parser)]
#[command(
    name = "abckit",
    version,
    about = "abc-triple quality toolkit: grade triples, audit the published table, run the curve-order and k-representation experiments"
)]
struct Cli {
    /// Output file (defaults to standard output).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads for the scans (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Iteration budget for the factoring splitter.
    #[arg(long, global = true)]
    factor_budget: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Grade the triple built from two coprime summands; prints one JSONL record.
    Quality { a: u128, b: u128 },

    /// Re-evaluate the embedded published table (and series coefficients) in exact integers.
    AuditTable,

    /// Enumerate (q, a1, n) order triples and emit those above the quality threshold.
    SearchFrobenius {
        /// Largest prime power q to visit.
        #[arg(long)]
        q_max: u128,
        /// Largest field-extension degree n per (q, a1) pair.
        #[arg(long)]
        n_max: u32,
        /// Emit reports with gamma >= this (ignored with --supersingular).
        #[arg(long, default_value_t = 1.0)]
        gamma_min: f64,
        /// Restrict to trace zero and emit every index, no threshold.
        #[arg(long)]
        supersingular: bool,
    },

    /// Scan the Hasse interval of one prime power for smooth or small-radical orders.
    ScanHasse {
        /// The prime power whose interval is scanned.
        #[arg(long)]
        q: u128,
        /// Genus: widens the interval to q + 1 +- 2g sqrt(q).
        #[arg(long, default_value_t = 1)]
        genus: u32,
        /// Keep orders whose prime factors are all <= this bound.
        #[arg(long)]
        smooth_bound: u128,
        /// Also keep orders with radical <= this cap.
        #[arg(long)]
        rad_cap: u128,
    },

    /// Export the remainder/angle distribution as a histogram CSV.
    Angles {
        /// Upper bound of the sample range (all n <= x, or prime powers <= x).
        #[arg(long)]
        x: u64,
        /// Histogram bin count.
        #[arg(long, default_value_t = 64)]
        bins: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::AllN)]
        mode: ModeArg,
    },

    /// Hunt prime powers p^(e>=3) with small square remainders (exact threshold).
    KrepHunt {
        /// Scan prime powers up to this bound.
        #[arg(long)]
        x: u128,
        /// Exponent delta as an exact rational N/D in (0, 1/2), e.g. 1/10.
        #[arg(long)]
        delta: RationalDelta,
        /// Keep only positive remainders.
        #[arg(long)]
        positive_only: bool,
    },

    /// Dump the remainder sequence b_n as CSV.
    Bn {
        /// Emit b_1 .. b_x.
        #[arg(long)]
        x: u64,
    },

    /// Check the prime-gap condition that makes the Hasse intervals cover the integers.
    CoverCheck {
        /// Check every consecutive prime pair up to this bound.
        #[arg(long)]
        x: u128,
        #[arg(long, default_value_t = 1)]
        genus: u32,
    },

    /// Rank cube/square differences x^3 - m^2 by |d| / sqrt(x).
    HallScan {
        /// Largest cube base to scan.
        #[arg(long)]
        x_max: u128,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    AllN,
    PrimePowers,
}

impl From<ModeArg> for UniformityMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::AllN => UniformityMode::AllN,
            ModeArg::PrimePowers => UniformityMode::PrimePowers,
        }
    }
}

enum Failure {
    Usage(String),
    Abort(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } | Error::Overflow | Error::TooLarge(_) => {
                Failure::Abort(e)
            }
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

/// Line-oriented sink honoring the interrupt flag: on SIGINT/SIGTERM the
/// current file is flushed with a trailing "# truncated" marker.
struct Sink {
    w: BufWriter<Box<dyn Write>>,
    truncated: bool,
}

impl Sink {
    fn open(path: Option<&PathBuf>) -> io::Result<Sink> {
        let w: Box<dyn Write> = match path {
            Some(p) => Box::new(File::create(p)?),
            None => Box::new(io::stdout().lock()),
        };
        Ok(Sink {
            w: BufWriter::new(w),
            truncated: false,
        })
    }

    /// Write one line unless interrupted; reports whether writing may continue.
    fn line(&mut self, s: &str) -> io::Result<bool> {
        if interrupted() {
            self.truncate()?;
            return Ok(false);
        }
        writeln!(self.w, "{s}")?;
        Ok(true)
    }

    fn truncate(&mut self) -> io::Result<()> {
        if !self.truncated {
            self.truncated = true;
            writeln!(self.w, "# truncated")?;
            self.w.flush()?;
        }
        Ok(())
    }

    fn finish(mut self) -> io::Result<bool> {
        self.w.flush()?;
        Ok(self.truncated)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    install_signal_handlers();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(1);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: could not size the thread pool: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli) {
        Ok(truncated) => {
            if truncated {
                ExitCode::from(130)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Abort(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let cfg = FactorConfig {
        rho_budget: cli
            .factor_budget
            .unwrap_or(FactorConfig::default().rho_budget),
    };
    // validate (and for single-record commands, compute) before touching the
    // output path so errors leave no file behind
    validate(&cli.command)?;
    if let Command::Quality { a, b } = &cli.command {
        let report = quality_report(*a, *b, &cfg)?;
        let mut sink = Sink::open(cli.out.as_ref())?;
        sink.line(&report.to_jsonl())?;
        return Ok(sink.finish()?);
    }
    let mut sink = Sink::open(cli.out.as_ref())?;

    match cli.command {
        Command::Quality { .. } => unreachable!("handled above"),
        Command::AuditTable => {
            for r in audit_table(&cfg) {
                if !sink.line(&r.to_jsonl())? {
                    break;
                }
            }
            for e in audit_series() {
                if !sink.line(&e.to_jsonl())? {
                    break;
                }
            }
        }
        Command::SearchFrobenius {
            q_max,
            n_max,
            gamma_min,
            supersingular,
        } => {
            let scan = if supersingular {
                supersingular_scan(q_max, n_max, &cfg)
            } else {
                enumerate_triples(q_max, n_max, gamma_min, &cfg)
            };
            write_frobenius(&mut sink, &scan)?;
        }
        Command::ScanHasse {
            q,
            genus,
            smooth_bound,
            rad_cap,
        } => {
            let scan = scan_hasse_smooth(q, genus, smooth_bound, rad_cap, &cfg);
            for hit in &scan.hits {
                if !sink.line(&hit.report.to_jsonl())? {
                    break;
                }
            }
            eprintln!(
                "scan-hasse q={q} g={genus}: {} hits, skipped degenerate={} not-coprime={} budget={}, soft-diagnostic failures={}",
                scan.hits.len(),
                scan.skipped.degenerate,
                scan.skipped.not_coprime,
                scan.skipped.budget,
                scan.soft_diag_failures
            );
        }
        Command::Angles { x, bins, mode } => {
            let report = uniformity_report(x, mode.into(), bins);
            if interrupted() {
                sink.truncate()?;
            } else {
                let mut buf = Vec::new();
                report.write_csv(&mut buf)?;
                for l in String::from_utf8(buf).expect("csv is utf8").lines() {
                    if !sink.line(l)? {
                        break;
                    }
                }
            }
        }
        Command::KrepHunt {
            x,
            delta,
            positive_only,
        } => {
            let mode = if positive_only {
                SignMode::PositiveOnly
            } else {
                SignMode::Both
            };
            let hits = small_remainder_scan(x, delta, mode);
            let count = hits.len();
            for h in hits {
                let theta = angle(h.p, h.exp)?.theta;
                let kq = krep_quality(h.p, h.exp, &cfg)?;
                let line = format!(
                    r#"{{"p":"{}","exp":{},"q":"{}","b":"{}","theta":{},"quality":{},"mode":"{}"}}"#,
                    h.p,
                    h.exp,
                    h.q,
                    h.b,
                    sig6(theta),
                    sig6(kq.quality),
                    h.mode.as_str(),
                );
                if !sink.line(&line)? {
                    break;
                }
            }
            eprintln!("krep-hunt x={x} delta={delta}: {count} hits");
        }
        Command::Bn { x } => {
            sink.line("n,b_n")?;
            for n in 1..=x {
                let b = krep(n as u128, 2).b();
                if !sink.line(&format!("{n},{b}"))? {
                    break;
                }
            }
        }
        Command::CoverCheck { x, genus } => {
            let report = cover_check(x, genus);
            write_cover(&mut sink, &report)?;
        }
        Command::HallScan { x_max } => {
            let records = abckit::krep::hall_scan(x_max)?;
            for r in records {
                if !sink.line(&r.to_jsonl())? {
                    break;
                }
            }
        }
    }
    Ok(sink.finish()?)
}

fn quality_report(a: u128, b: u128, cfg: &FactorConfig) -> Result<abckit::QualityReport, Failure> {
    let t = make_triple(a, b, "manual")?;
    Ok(quality(&t, cfg)?)
}

fn validate(cmd: &Command) -> Result<(), Failure> {
    match cmd {
        Command::Angles { x, bins, .. } => {
            if *x < 8 {
                return Err(Failure::Usage("--x must be at least 8".into()));
            }
            if *x > 1_000_000_000 {
                return Err(Failure::Usage(
                    "--x above 10^9 is not supported (the KS stage keeps all samples in memory)"
                        .into(),
                ));
            }
            if *bins < 1 {
                return Err(Failure::Usage("--bins must be at least 1".into()));
            }
            Ok(())
        }
        Command::Bn { x } => {
            if *x < 1 {
                return Err(Failure::Usage("--x must be at least 1".into()));
            }
            Ok(())
        }
        Command::ScanHasse { q, genus, .. } => {
            if prime_power_parts(*q).is_none() {
                return Err(Failure::Usage(format!("--q {q} is not a prime power")));
            }
            let width = 2 * isqrt(4 * (*genus as u128) * (*genus as u128) * q) + 1;
            if width > 100_000_000 {
                return Err(Failure::Usage(format!(
                    "--q {q}: Hasse interval has {width} candidates; stay below 10^8"
                )));
            }
            Ok(())
        }
        Command::SearchFrobenius { q_max, n_max, .. } => {
            if *q_max < 2 {
                return Err(Failure::Usage("--q-max must be at least 2".into()));
            }
            if *q_max > u64::MAX as u128 {
                return Err(Failure::Usage(
                    "--q-max above 2^64 is not supported (prime enumeration bound)".into(),
                ));
            }
            if *n_max < 1 {
                return Err(Failure::Usage("--n-max must be at least 1".into()));
            }
            Ok(())
        }
        Command::KrepHunt { x, .. } => {
            if *x < 8 {
                return Err(Failure::Usage("--x must be at least 8".into()));
            }
            if *x > u64::MAX as u128 {
                return Err(Failure::Usage(
                    "--x above 2^64 is not supported (prime enumeration bound)".into(),
                ));
            }
            Ok(())
        }
        Command::CoverCheck { x, .. } => {
            if *x < 3 {
                return Err(Failure::Usage("--x must be at least 3".into()));
            }
            if *x > u64::MAX as u128 {
                return Err(Failure::Usage(
                    "--x above 2^64 is not supported (prime enumeration bound)".into(),
                ));
            }
            Ok(())
        }
        Command::HallScan { x_max } => {
            if *x_max < 2 {
                return Err(Failure::Usage("--x-max must be at least 2".into()));
            }
            Ok(())
        }
        _ => Ok(()),
    }
}

fn write_frobenius(sink: &mut Sink, scan: &FrobeniusScan) -> Result<(), Failure> {
    for r in &scan.reports {
        if !sink.line(&r.to_jsonl())? {
            break;
        }
    }
    eprintln!(
        "search-frobenius: {} reports from {} candidates, skipped degenerate={} not-coprime={} overflow={} budget={}",
        scan.reports.len(),
        scan.candidates,
        scan.skipped.degenerate,
        scan.skipped.not_coprime,
        scan.skipped.overflow,
        scan.skipped.budget
    );
    Ok(())
}

fn write_cover(sink: &mut Sink, report: &CoverReport) -> Result<(), Failure> {
    let gap_str = |g: &abckit::curves::GapRecord| format!("({},{},{})", g.p, g.next, g.gap);
    let max_gap = report.max_gap.as_ref().map_or("none".to_string(), gap_str);
    let max_ratio = report
        .max_ratio
        .as_ref()
        .map_or("none".to_string(), |(g, r)| {
            format!("{} ratio={}", gap_str(g), sig6(*r))
        });
    sink.line(&format!(
        "covered={} x={} genus={} violations={} max_gap={} max_ratio={}",
        report.covered,
        report.x,
        report.genus,
        report.failures.len(),
        max_gap,
        max_ratio
    ))?;
    for f in &report.failures {
        if !sink.line(&format!("violation: {}", gap_str(f)))? {
            break;
        }
    }
    Ok(())
}
