//! `weilpoly`: enumerate, check and classify q-Weil polynomials, and
//! cross-check the enumeration against brute force.

mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use weilpoly_core::crosscheck::selftest::{self, SelftestConfig};
use weilpoly_core::crosscheck::{compare, sample_compare, CompareOptions, OracleKind, DEFAULT_BUDGET};
use weilpoly_core::enumerate::{enumerate, EnumConfig, Filter, Mode, Record, ThetaOrder};
use weilpoly_core::exact::PrecisionConfig;
use weilpoly_core::weil::{validate_q, WeilCandidate};

use output::{csv_header, csv_row, OutputRecord};

const EXIT_NON_MEMBER: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_NOT_PRIME_POWER: u8 = 3;
const EXIT_PRECISION: u8 = 4;
const EXIT_DISCREPANCY: u8 = 5;
const EXIT_BUDGET: u8 = 6;
const EXIT_SELFTEST: u8 = 7;

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] weilpoly_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use weilpoly_core::Error as E;
        match self {
            CliError::Core(E::NotPrimePower(_)) => EXIT_NOT_PRIME_POWER,
            CliError::Core(E::PrecisionExhausted { .. }) => EXIT_PRECISION,
            CliError::Core(E::BudgetExceeded { .. }) => EXIT_BUDGET,
            CliError::Core(E::NotWeil) => EXIT_NON_MEMBER,
            _ => EXIT_INVALID,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(name = "weilpoly", version, about = "Enumerate and verify q-Weil polynomials of degree 2g, g ≤ 5")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List W_q(g) from the coefficient inequalities.
    Enumerate(EnumerateArgs),
    /// Decide membership of one coefficient prefix.
    Check(CandidateArgs),
    /// Describe how ±√q divide a member.
    Classify(CandidateArgs),
    /// Compare the enumeration with a brute-force oracle.
    Crosscheck(CrosscheckArgs),
    /// Run the embedded invariant suite.
    Selftest(SelftestArgs),
}

#[derive(Args, Clone)]
struct PrecisionArgs {
    /// Precision cap in bits for interval evaluation.
    #[arg(long = "prec", env = "WEILPOLY_PREC")]
    prec: Option<u32>,
    /// Fail with exit code 4 instead of deciding ambiguous comparisons exactly.
    #[arg(long)]
    no_exact_fallback: bool,
}

impl PrecisionArgs {
    fn config(&self) -> CliResult<PrecisionConfig> {
        let mut p = PrecisionConfig::default();
        if let Some(bits) = self.prec {
            if bits < 2 {
                return Err(CliError::Usage("--prec must be at least 2".into()));
            }
            p.cap_bits = bits;
        }
        p.exact_fallback = !self.no_exact_fallback;
        Ok(p)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Theorem,
    Safe,
}

#[derive(Clone, Copy, ValueEnum)]
enum FilterArg {
    All,
    RealRoots,
    NoRealRoots,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Jsonl,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ThetaOrderArg {
    Sorted,
    /// Fault injection: use the unsorted construction order.
    Construction,
}

impl From<ThetaOrderArg> for ThetaOrder {
    fn from(t: ThetaOrderArg) -> ThetaOrder {
        match t {
            ThetaOrderArg::Sorted => ThetaOrder::Sorted,
            ThetaOrderArg::Construction => ThetaOrder::Construction,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleArg {
    CoeffBox,
    TraceSpace,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    g: usize,
    #[arg(long, value_enum, default_value = "theorem")]
    mode: ModeArg,
    #[arg(long, value_enum, default_value = "all")]
    filter: FilterArg,
    #[arg(long, value_enum, default_value = "jsonl")]
    format: FormatArg,
    /// Write records here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, value_enum, default_value = "sorted", hide = true)]
    theta_order: ThetaOrderArg,
    #[command(flatten)]
    precision: PrecisionArgs,
}

#[derive(Args)]
struct CandidateArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    g: usize,
    /// Comma-separated a₁,…,a_g.
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',', num_args = 1..)]
    a: Vec<i64>,
}

#[derive(Args)]
struct CrosscheckArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    g: usize,
    /// Maximum number of tuples the oracle may visit.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Compare on this many uniform samples from the coefficient box instead
    /// of the full oracle.
    #[arg(long)]
    sample: Option<u64>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_enum, default_value = "coeff-box")]
    oracle: OracleArg,
    /// Decide membership with the printed sign conventions (diagnostic).
    #[arg(long)]
    paper_literal: bool,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, value_enum, default_value = "sorted", hide = true)]
    theta_order: ThetaOrderArg,
    #[command(flatten)]
    precision: PrecisionArgs,
}

#[derive(Args)]
struct SelftestArgs {
    #[arg(long, value_enum, default_value = "sorted", hide = true)]
    theta_order: ThetaOrderArg,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[command(flatten)]
    precision: PrecisionArgs,
}

fn writer(out: &Option<PathBuf>) -> CliResult<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_records(mut w: Box<dyn Write>, format: FormatArg, records: &[Record]) -> CliResult<()> {
    match format {
        FormatArg::Jsonl => {
            for r in records {
                serde_json::to_writer(&mut w, &OutputRecord::from_record(r)?)?;
                writeln!(w)?;
            }
            w.flush()?;
        }
        FormatArg::Csv => {
            let mut c = csv::WriterBuilder::new().flexible(false).from_writer(w);
            c.write_record(csv_header())?;
            for r in records {
                c.write_record(csv_row(&OutputRecord::from_record(r)?))?;
            }
            c.flush()?;
        }
    }
    Ok(())
}

fn cmd_enumerate(args: &EnumerateArgs) -> CliResult<u8> {
    let start = Instant::now();
    let cfg = EnumConfig {
        q: args.q,
        g: args.g,
        mode: match args.mode {
            ModeArg::Theorem => Mode::Theorem,
            ModeArg::Safe => Mode::Safe,
        },
        filter: match args.filter {
            FilterArg::All => Filter::All,
            FilterArg::RealRoots => Filter::RealRootsOnly,
            FilterArg::NoRealRoots => Filter::NoRealRoots,
        },
        precision: args.precision.config()?,
        jobs: args.jobs,
        theta_order: args.theta_order.into(),
    };
    let e = enumerate(&cfg)?;
    write_records(writer(&args.out)?, args.format, &e.records)?;
    let real = e.records.iter().filter(|r| r.real_root).count();
    eprintln!(
        "count={} real_root={} elapsed_ms={:.1} stats={}",
        e.records.len(),
        real,
        start.elapsed().as_secs_f64() * 1e3,
        serde_json::to_string(&e.stats)?
    );
    Ok(0)
}

fn candidate(args: &CandidateArgs) -> CliResult<WeilCandidate> {
    validate_q(args.q)?;
    if args.a.len() != args.g {
        return Err(CliError::Usage(format!("--a has {} entries, expected g = {}", args.a.len(), args.g)));
    }
    Ok(WeilCandidate::new(args.q, args.a.clone())?)
}

fn cmd_check(args: &CandidateArgs) -> CliResult<u8> {
    let c = candidate(args)?;
    let rec = OutputRecord::from_candidate(&c)?;
    println!("{}", serde_json::to_string(&rec)?);
    Ok(if rec.member { 0 } else { EXIT_NON_MEMBER })
}

fn cmd_classify(args: &CandidateArgs) -> CliResult<u8> {
    let c = candidate(args)?;
    let class = c.classify_real_roots()?;
    println!("{}", serde_json::to_string(&output::ClassView::from_class(&class))?);
    Ok(0)
}

fn global_pool(jobs: usize) {
    if jobs > 0 {
        // an already-initialized pool is fine
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
}

fn cmd_crosscheck(args: &CrosscheckArgs) -> CliResult<u8> {
    global_pool(args.jobs);
    let enumeration = EnumConfig {
        precision: args.precision.config()?,
        jobs: args.jobs,
        theta_order: args.theta_order.into(),
        ..EnumConfig::new(args.q, args.g)
    };
    let ok = if let Some(n) = args.sample {
        let r = sample_compare(&enumeration, n, args.seed)?;
        println!("{}", serde_json::to_string_pretty(&r)?);
        r.ok()
    } else {
        let opts = CompareOptions {
            oracle: match args.oracle {
                OracleArg::CoeffBox => OracleKind::CoeffBox,
                OracleArg::TraceSpace => OracleKind::TraceSpace,
            },
            budget: args.budget,
            paper_literal: args.paper_literal,
            enumeration: Some(enumeration),
        };
        let r = compare(args.q, args.g, &opts)?;
        println!("{}", serde_json::to_string_pretty(&r)?);
        r.ok()
    };
    Ok(if ok { 0 } else { EXIT_DISCREPANCY })
}

fn cmd_selftest(args: &SelftestArgs) -> CliResult<u8> {
    let cfg = SelftestConfig {
        precision: args.precision.config()?,
        theta_order: args.theta_order.into(),
        seed: args.seed,
    };
    let report = selftest::run(&cfg)?;
    for c in &report.checks {
        if c.passed {
            println!("PASS {}", c.name);
        } else {
            println!("FAIL {}: {}", c.name, c.detail);
        }
    }
    if report.passed() {
        Ok(0)
    } else {
        eprintln!("failed properties: {}", report.failures().join(", "));
        Ok(EXIT_SELFTEST)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Check(a) => cmd_check(a),
        Command::Classify(a) => cmd_classify(a),
        Command::Crosscheck(a) => cmd_crosscheck(a),
        Command::Selftest(a) => cmd_selftest(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
