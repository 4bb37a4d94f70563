use std::fmt;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use ks2::asymptotic::{scale_statistic, smirnov_tail};
use ks2::corridor::CorridorSpec;
use ks2::exact::{brute_force_p2, p2_classical_exact_with_cap, ExactP, DEFAULT_MAX_MN, MAX_BRUTE_FORCE_STEPS};
use ks2::input::{read_sample_file, DecimalRational};
use ks2::report::{format_full, format_human, KsReport};
use ks2::stable::{p2_stable, p2_stable_full, MAX_FULL_TABLE_CELLS};
use ks2::statistic::{compute_statistic, KsStatistic, Sample, StatisticError, TiePolicy};

#[derive(Parser)]
#[command(
    name = "ks2",
    version,
    about = "Exact p-values for the two-sided two-sample Kolmogorov-Smirnov test"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Test two sample files (one value per line) and report the p-value
    Test {
        /// First sample file
        xfile: PathBuf,
        /// Second sample file
        yfile: PathBuf,
        /// Evaluation method
        #[arg(long, value_enum, default_value_t = MethodArg::Stable)]
        method: MethodArg,
        /// Cross-sample tie handling
        #[arg(long, value_enum, default_value_t = TiesArg::Resolve)]
        ties: TiesArg,
        /// Emit the report as JSON
        #[arg(long)]
        json: bool,
    },
    /// Evaluate Prob[D >= d] for explicit sizes and threshold
    #[command(group(ArgGroup::new("threshold").required(true).args(["c", "d"])))]
    Pvalue {
        /// First sample size
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
        /// Second sample size
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// Integer threshold: the numerator of d over m*n
        #[arg(long)]
        c: Option<i64>,
        /// Decimal threshold, parsed exactly (never via double rounding)
        #[arg(long)]
        d: Option<String>,
        /// Evaluation method, or `all` for a side-by-side comparison
        #[arg(long, value_enum, default_value_t = MethodArg::Stable)]
        method: MethodArg,
        /// Emit the report as JSON
        #[arg(long)]
        json: bool,
    },
    /// Sweep a grid of (m, n, c) cells and emit stable-vs-exact CSV rows
    Compare {
        /// Largest first sample size
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        m_max: u64,
        /// Largest second sample size
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n_max: u64,
        /// Thresholds per (m, n) pair, sampled from the seed; all when omitted
        #[arg(long)]
        samples: Option<u64>,
        /// Seed for deterministic threshold sampling
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Stable,
    Full,
    ExactRational,
    BruteForce,
    Asymptotic,
    All,
}

impl MethodArg {
    fn name(self) -> &'static str {
        match self {
            MethodArg::Stable => "stable",
            MethodArg::Full => "full",
            MethodArg::ExactRational => "exact-rational",
            MethodArg::BruteForce => "brute-force",
            MethodArg::Asymptotic => "asymptotic",
            MethodArg::All => "all",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TiesArg {
    Resolve,
    Reject,
}

impl From<TiesArg> for TiePolicy {
    fn from(value: TiesArg) -> Self {
        match value {
            TiesArg::Resolve => TiePolicy::Resolve,
            TiesArg::Reject => TiePolicy::Reject,
        }
    }
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Ties(String),
    Resource(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) | CliError::Ties(msg) | CliError::Resource(msg) => f.write_str(msg),
        }
    }
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Ties(_) => 3,
            CliError::Resource(_) => 4,
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli.command) {
        eprintln!("error: {err}");
        std::process::exit(err.code());
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Test {
            xfile,
            yfile,
            method,
            ties,
            json,
        } => cmd_test(&xfile, &yfile, method, ties.into(), json),
        Command::Pvalue {
            m,
            n,
            c,
            d,
            method,
            json,
        } => cmd_pvalue(m, n, c, d.as_deref(), method, json),
        Command::Compare {
            m_max,
            n_max,
            samples,
            seed,
        } => cmd_compare(m_max, n_max, samples, seed),
    }
}

/// Resource cap on m + n for the exact-rational method; overridable via
/// the KS2_MAX_MN environment variable.
fn exact_cap() -> Result<u64, CliError> {
    match std::env::var("KS2_MAX_MN") {
        Ok(raw) => raw
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("KS2_MAX_MN must be a positive integer, got {raw:?}"))),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_MAX_MN),
        Err(err) => Err(CliError::Input(format!("KS2_MAX_MN: {err}"))),
    }
}

struct Evaluation {
    p: f64,
    exact: Option<ExactP>,
    elapsed_ms: f64,
}

fn evaluate(method: MethodArg, spec: &CorridorSpec, cap: u64) -> Result<Evaluation, CliError> {
    let started = Instant::now();
    let (p, exact) = match method {
        MethodArg::Stable => (p2_stable(spec), None),
        MethodArg::Full => {
            let p = p2_stable_full(spec).map_err(|e| CliError::Resource(e.to_string()))?;
            (p, None)
        }
        MethodArg::ExactRational => {
            let r = p2_classical_exact_with_cap(spec, cap)
                .map_err(|e| CliError::Resource(e.to_string()))?;
            (r.to_f64(), Some(r))
        }
        MethodArg::BruteForce => {
            let r = brute_force_p2(spec).map_err(|e| CliError::Resource(e.to_string()))?;
            (r.to_f64(), Some(r))
        }
        MethodArg::Asymptotic => {
            let p = if spec.c() <= 0 {
                1.0
            } else {
                let stat = KsStatistic {
                    m: spec.m(),
                    n: spec.n(),
                    c: spec.c() as u64,
                };
                smirnov_tail(scale_statistic(&stat))
            };
            (p, None)
        }
        MethodArg::All => unreachable!("expanded by the caller"),
    };
    Ok(Evaluation {
        p,
        exact,
        elapsed_ms: started.elapsed().as_secs_f64() * 1e3,
    })
}

fn build_report(spec: &CorridorSpec, method: MethodArg, eval: &Evaluation, ties: bool) -> KsReport {
    KsReport {
        m: spec.m(),
        n: spec.n(),
        c: spec.c(),
        d: format_full(spec.c() as f64 / (spec.m() as f64 * spec.n() as f64)),
        method: method.name().to_string(),
        p_value: format_full(eval.p),
        p_exact: eval.exact.as_ref().map(|r| r.to_string()),
        ties_detected: ties,
        elapsed_ms: eval.elapsed_ms,
    }
}

fn print_report(report: &KsReport, exact: Option<&ExactP>, json: bool) {
    if json {
        println!("{}", report.to_json());
        return;
    }
    println!("m = {}  n = {}  c = {}  d = {}", report.m, report.n, report.c, report.d);
    if report.ties_detected {
        println!("warning: cross-sample ties detected; statistic evaluated at jump points");
    }
    let p: f64 = report.p_value.parse().unwrap_or(f64::NAN);
    println!("method: {}", report.method);
    println!("p-value: {}", format_human(p));
    if let Some(r) = exact {
        println!("exact: {r}");
        if r.to_f64_flagged().1 {
            println!("note: the exact p-value underflows double precision");
        }
    }
    println!("elapsed: {:.3} ms", report.elapsed_ms);
}

fn cmd_test(
    xfile: &Path,
    yfile: &Path,
    method: MethodArg,
    ties: TiePolicy,
    json: bool,
) -> Result<(), CliError> {
    if method == MethodArg::All {
        return Err(CliError::Input(
            "method 'all' is only available for the pvalue subcommand".to_string(),
        ));
    }
    let xs = read_sample_file(xfile).map_err(|e| CliError::Input(e.to_string()))?;
    let ys = read_sample_file(yfile).map_err(|e| CliError::Input(e.to_string()))?;
    let xs = Sample::new(xs).map_err(|e| CliError::Input(e.to_string()))?;
    let ys = Sample::new(ys).map_err(|e| CliError::Input(e.to_string()))?;
    let outcome = compute_statistic(&xs, &ys, ties).map_err(|e| match e {
        StatisticError::TieRejected { .. } => CliError::Ties(e.to_string()),
        other => CliError::Input(other.to_string()),
    })?;
    let stat = outcome.statistic;
    let spec = CorridorSpec::new(stat.m, stat.n, stat.c as i64);
    let cap = exact_cap()?;
    let eval = evaluate(method, &spec, cap)?;
    let report = build_report(&spec, method, &eval, outcome.ties_detected);
    print_report(&report, eval.exact.as_ref(), json);
    Ok(())
}

/// Convert a decimal threshold to the smallest integer c with
/// c/(m*n) >= d, clamped just past the grid when d > 1.
fn threshold_from_decimal(text: &str, m: u64, n: u64) -> Result<i64, CliError> {
    let parsed = DecimalRational::parse(text)
        .ok_or_else(|| CliError::Input(format!("cannot parse {text:?} as a non-negative decimal")))?;
    let c = parsed.ceil_threshold(m, n);
    let limit = m as u128 * n as u128 + 1;
    let c = c.to_u128().map_or(limit, |v| v.min(limit));
    Ok(i64::try_from(c).unwrap_or(i64::MAX))
}

#[derive(Serialize)]
struct MethodRow {
    method: String,
    p_value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    p_exact: Option<String>,
    complement: String,
    elapsed_ms: f64,
}

#[derive(Serialize)]
struct DeltaRow {
    method_a: String,
    method_b: String,
    abs_delta: String,
    rel_delta: String,
}

#[derive(Serialize)]
struct SkippedRow {
    method: String,
    reason: String,
}

#[derive(Serialize)]
struct AllReport {
    m: u64,
    n: u64,
    c: i64,
    d: String,
    methods: Vec<MethodRow>,
    deltas: Vec<DeltaRow>,
    skipped: Vec<SkippedRow>,
}

fn cmd_pvalue(
    m: u64,
    n: u64,
    c: Option<i64>,
    d: Option<&str>,
    method: MethodArg,
    json: bool,
) -> Result<(), CliError> {
    let c = match (c, d) {
        (Some(c), None) => c,
        (None, Some(d)) => threshold_from_decimal(d, m, n)?,
        _ => unreachable!("clap enforces exactly one of --c/--d"),
    };
    let spec = CorridorSpec::new(m, n, c);
    let cap = exact_cap()?;
    if method != MethodArg::All {
        let eval = evaluate(method, &spec, cap)?;
        let report = build_report(&spec, method, &eval, false);
        print_report(&report, eval.exact.as_ref(), json);
        return Ok(());
    }

    let mut rows: Vec<(MethodArg, Evaluation)> = Vec::new();
    let mut skipped: Vec<SkippedRow> = Vec::new();
    let candidates = [
        MethodArg::Stable,
        MethodArg::Full,
        MethodArg::ExactRational,
        MethodArg::BruteForce,
        MethodArg::Asymptotic,
    ];
    for candidate in candidates {
        match guard_reason(candidate, &spec, cap) {
            Some(reason) => skipped.push(SkippedRow {
                method: candidate.name().to_string(),
                reason,
            }),
            None => rows.push((candidate, evaluate(candidate, &spec, cap)?)),
        }
    }
    let deltas: Vec<DeltaRow> = rows
        .iter()
        .enumerate()
        .flat_map(|(i, (ma, ea))| {
            rows[i + 1..].iter().map(move |(mb, eb)| {
                let abs = (ea.p - eb.p).abs();
                let scale = ea.p.abs().max(eb.p.abs());
                let rel = if scale == 0.0 { 0.0 } else { abs / scale };
                DeltaRow {
                    method_a: ma.name().to_string(),
                    method_b: mb.name().to_string(),
                    abs_delta: format!("{abs:e}"),
                    rel_delta: format!("{rel:e}"),
                }
            })
        })
        .collect();
    let all = AllReport {
        m,
        n,
        c,
        d: format_full(c as f64 / (m as f64 * n as f64)),
        methods: rows
            .iter()
            .map(|(ma, ev)| MethodRow {
                method: ma.name().to_string(),
                p_value: format_full(ev.p),
                p_exact: ev.exact.as_ref().map(|r| r.to_string()),
                complement: format_full(1.0 - ev.p),
                elapsed_ms: ev.elapsed_ms,
            })
            .collect(),
        deltas,
        skipped,
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&all).expect("report serializes"));
    } else {
        println!("m = {}  n = {}  c = {}  d = {}", all.m, all.n, all.c, all.d);
        for row in &all.methods {
            println!(
                "{:<16} p = {:<14} 1-p = {:<22} ({:.3} ms)",
                row.method,
                format_human(row.p_value.parse().unwrap_or(f64::NAN)),
                row.complement,
                row.elapsed_ms
            );
            if let Some(exact) = &row.p_exact {
                println!("{:<16} exact = {}", "", exact);
            }
        }
        for delta in &all.deltas {
            println!(
                "delta {} vs {}: abs {}, rel {}",
                delta.method_a, delta.method_b, delta.abs_delta, delta.rel_delta
            );
        }
        for skip in &all.skipped {
            println!("skipped {}: {}", skip.method, skip.reason);
        }
    }
    Ok(())
}

/// Why a method cannot run on this spec, or None when it can.
fn guard_reason(method: MethodArg, spec: &CorridorSpec, cap: u64) -> Option<String> {
    let sum = spec.m() + spec.n();
    match method {
        MethodArg::Full if spec.m() as u128 * spec.n() as u128 > MAX_FULL_TABLE_CELLS => {
            Some(format!("m*n exceeds the {MAX_FULL_TABLE_CELLS}-cell full-table guard"))
        }
        MethodArg::ExactRational if sum > cap => {
            Some(format!("m + n = {sum} exceeds the exact-arithmetic cap of {cap}"))
        }
        MethodArg::BruteForce if sum > MAX_BRUTE_FORCE_STEPS => Some(format!(
            "m + n = {sum} exceeds the brute-force limit of {MAX_BRUTE_FORCE_STEPS}"
        )),
        _ => None,
    }
}

fn cmd_compare(m_max: u64, n_max: u64, samples: Option<u64>, seed: u64) -> Result<(), CliError> {
    let cap = exact_cap()?;
    if m_max + n_max > cap {
        return Err(CliError::Resource(format!(
            "m_max + n_max = {} exceeds the exact-arithmetic cap of {cap}",
            m_max + n_max
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cells: Vec<(u64, u64, i64)> = Vec::new();
    for m in 1..=m_max {
        for n in 1..=n_max {
            let total = m * n + 2; // c ranges over 0..=m*n+1
            let thresholds: Vec<i64> = match samples {
                Some(k) if k < total => {
                    let mut picked = rand::seq::index::sample(&mut rng, total as usize, k as usize).into_vec();
                    picked.sort_unstable();
                    picked.into_iter().map(|v| v as i64).collect()
                }
                _ => (0..total as i64).collect(),
            };
            cells.extend(thresholds.into_iter().map(|c| (m, n, c)));
        }
    }
    println!("m,n,c,p_stable,p_exact_rational_as_double,rel_err,t_stable_ms,t_exact_ms");
    let rows: Vec<String> = cells
        .par_iter()
        .map(|&(m, n, c)| {
            let spec = CorridorSpec::new(m, n, c);
            let t0 = Instant::now();
            let p_stable = p2_stable(&spec);
            let t_stable = t0.elapsed().as_secs_f64() * 1e3;
            let t1 = Instant::now();
            let p_exact = p2_classical_exact_with_cap(&spec, cap)
                .expect("cap verified for the whole grid")
                .to_f64();
            let t_exact = t1.elapsed().as_secs_f64() * 1e3;
            let rel_err = if p_exact == 0.0 {
                (p_stable - p_exact).abs()
            } else {
                (p_stable - p_exact).abs() / p_exact
            };
            format!(
                "{m},{n},{c},{},{},{rel_err:e},{t_stable:.3},{t_exact:.3}",
                format_full(p_stable),
                format_full(p_exact)
            )
        })
        .collect();
    for row in rows {
        println!("{row}");
    }
    Ok(())
}
