use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde_json::{json, Value};
use simpal::checkpoint::CheckpointError;
use simpal::parse::{parse_base_list, parse_integer};
use simpal::report::{fixed, int, real, Format, RunReport};
use simpal::runner::{self, RunConfig, RunError};
use simpal_core::bounds::{family_n_bound, lemma_main_c, lemma_main_terms, theorem1_bound, theorem1_terms};
use simpal_core::radix::{self, Radix};
use simpal_core::reduction::{continued_fraction, Branch, FamilyConfig, FamilyOutcome, FamilyVerifier, RealSource};
use simpal_core::{PosRational, PreciseReal};

/// Significant digits of real numbers in reports.
const REAL_DIGITS: usize = 10;
/// Decimals of base-10 logarithms in reports.
const LOG_DECIMALS: usize = 6;

#[derive(Parser, Debug)]
#[command(name = "simpal", version, about = "Integers that are palindromes in two bases at once")]
struct Cli {
    /// Output format of the report.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,

    /// Starting precision (bits) of certified real arithmetic.
    #[arg(long, global = true, env = "SIMPAL_PRECISION_BITS", default_value_t = 192)]
    precision_bits: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tell whether N is a palindrome in each of the given bases.
    Check {
        n: String,
        /// Comma-separated bases, e.g. 10,2.
        #[arg(long, default_value = "10,2")]
        bases: String,
    },
    /// List every N ≤ B that is a palindrome in bases g and h.
    Search(SearchArgs),
    /// Count the N ≤ B that are palindromes in bases g and h.
    Count(SearchArgs),
    /// Find every n for which a·gⁿ + rev(a) is a palindrome in base h.
    Family {
        a: String,
        g: u64,
        h: u64,
        /// Floor of the dependent-case convergent test.
        #[arg(long, default_value_t = 30)]
        n_floor: u64,
        /// Largest n tested directly before giving up as undecided.
        #[arg(long, default_value_t = 10_000)]
        max_n: u64,
        /// Convergents of log g/log h used for reduction pairs.
        #[arg(long, default_value_t = 50)]
        convergents: usize,
        /// Start from this bound on n instead of the computed one (must not be smaller).
        #[arg(long)]
        x: Option<String>,
        /// Exponent of h in the reduction constant (must be at least the digit count of a).
        #[arg(long)]
        slack: Option<u32>,
    },
    /// Evaluate the bounds on n for the family a·gⁿ + rev(a), term by term.
    Bound {
        a: String,
        g: u64,
        h: u64,
        /// Also evaluate the threshold C(a, g, h, n) at this n.
        n: Option<String>,
    },
    /// Partial quotients and convergents of log g/log h.
    Cf { g: u64, h: u64, count: usize },
}

#[derive(Args, Debug)]
struct SearchArgs {
    g: u64,
    h: u64,
    /// Upper bound B, e.g. 1e9, 6^20 or 1000000.
    bound: String,
    /// Worker threads (default: one per core).
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Write checkpoints to this file, starting afresh.
    #[arg(long, conflicts_with = "resume")]
    checkpoint: Option<PathBuf>,
    /// Continue from this checkpoint file and keep checkpointing to it.
    #[arg(long)]
    resume: Option<PathBuf>,
    /// Seconds between checkpoints within a digit-length block.
    #[arg(long, default_value_t = 60.0)]
    checkpoint_interval: f64,
    /// Enumerate palindromes of this base (g or h) instead of the cheaper one.
    #[arg(long)]
    driver: Option<u32>,
    /// Half-values per work segment.
    #[arg(long, default_value_t = 1 << 14, hide = true)]
    segment_len: u64,
}

/// Exit status with its meaning.
#[derive(Clone, Copy, Debug)]
enum Status {
    Success = 0,
    Negative = 1,
    Usage = 2,
    Checkpoint = 3,
    Undecided = 4,
}

struct Failure {
    status: Status,
    message: String,
}

impl Failure {
    fn usage(e: impl ToString) -> Self {
        Failure {
            status: Status::Usage,
            message: e.to_string(),
        }
    }
}

impl From<simpal_core::Error> for Failure {
    fn from(e: simpal_core::Error) -> Self {
        use simpal_core::Error as E;
        let status = match e {
            E::CheckpointMismatch(_) | E::CorruptCheckpoint(_) => Status::Checkpoint,
            _ => Status::Usage,
        };
        Failure {
            status,
            message: e.to_string(),
        }
    }
}

impl From<RunError> for Failure {
    fn from(e: RunError) -> Self {
        match e {
            RunError::Core(e) => e.into(),
            RunError::Checkpoint(c) => {
                let status = match &c {
                    CheckpointError::Io { source, .. } if source.kind() == std::io::ErrorKind::NotFound => Status::Usage,
                    CheckpointError::Io { .. } => Status::Negative,
                    CheckpointError::Format { .. } | CheckpointError::Locked(_) => Status::Checkpoint,
                };
                Failure {
                    status,
                    message: c.to_string(),
                }
            }
            RunError::Threads(e) => Failure {
                status: Status::Negative,
                message: e.to_string(),
            },
        }
    }
}

fn radix(b: u64) -> Result<Radix, Failure> {
    Ok(Radix::new(b)?)
}

fn integer(s: &str) -> Result<BigUint, Failure> {
    parse_integer(s).map_err(Failure::usage)
}

fn upper(x: &PreciseReal) -> Value {
    real(x.upper_f64(), REAL_DIGITS)
}

fn log10_upper(x: &PreciseReal) -> Value {
    fixed(x.upper_f64().log10(), LOG_DECIMALS)
}

fn render_digits(n: &BigUint, b: Radix) -> String {
    let d = radix::digits(n, b);
    let msd_first = d.digits().iter().rev();
    if b.get() <= 10 {
        msd_first.map(|x| char::from_digit(*x, 10).expect("digit")).collect()
    } else {
        msd_first.map(|x| x.to_string()).collect::<Vec<_>>().join(".")
    }
}

fn cmd_check(n: &str, bases: &str) -> Result<(RunReport, Status), Failure> {
    let value = integer(n)?;
    if value.bits() == 0 {
        return Err(Failure::usage("N must be positive"));
    }
    let bases = parse_base_list(bases).map_err(Failure::usage)?;
    if bases.is_empty() {
        return Err(Failure::usage("no bases given"));
    }
    let mut report = RunReport::new("check");
    report.param("n", int(&value)).param("bases", bases.clone());
    let mut all = true;
    for b in bases {
        let r = radix(b)?;
        let is_pal = simpal_core::simulcheck::is_palindrome_early_exit(&value, r);
        all &= is_pal;
        report.results.push(json!({
            "base": b,
            "digits": render_digits(&value, r),
            "palindrome": is_pal,
        }));
    }
    Ok((report, if all { Status::Success } else { Status::Negative }))
}

fn cmd_search(args: &SearchArgs, retain: bool) -> Result<(RunReport, Status), Failure> {
    let g = radix(args.g)?;
    let h = radix(args.h)?;
    let bound = integer(&args.bound)?;
    if !(args.checkpoint_interval >= 0.0 && args.checkpoint_interval.is_finite()) {
        return Err(Failure::usage("checkpoint interval must be a non-negative number of seconds"));
    }
    let cfg = RunConfig {
        threads: args.threads,
        segment_len: args.segment_len.max(1),
        checkpoint: args.resume.clone().or_else(|| args.checkpoint.clone()),
        resume: args.resume.is_some(),
        checkpoint_interval: Duration::from_secs_f64(args.checkpoint_interval),
        retain,
        driver: args.driver,
        ..RunConfig::default()
    };
    let out = runner::run(g, h, &bound, &cfg)?;
    let mut report = RunReport::new(if retain { "search" } else { "count" });
    report
        .param("g", args.g)
        .param("h", args.h)
        .param("bound", int(&bound))
        .param("enumeration_base", out.driver)
        .param("infinitely_many", out.infinitely_many);
    if retain {
        report.results = out.found.iter().map(int).collect();
    } else {
        report.results = vec![int(out.count)];
    }
    report.checkpoint_path = cfg.checkpoint.map(|p| p.display().to_string());
    Ok((report, Status::Success))
}

#[allow(clippy::too_many_arguments)]
fn cmd_family(
    a: &str,
    g: u64,
    h: u64,
    n_floor: u64,
    max_n: u64,
    convergents: usize,
    x: Option<&str>,
    slack: Option<u32>,
    precision_bits: u32,
) -> Result<(RunReport, Status), Failure> {
    let a = integer(a)?;
    let x_override = match x {
        Some(s) => Some(
            u64::try_from(integer(s)?).map_err(|_| Failure::usage("--x must fit in 64 bits"))?,
        ),
        None => None,
    };
    let config = FamilyConfig {
        convergent_count: convergents,
        n_floor,
        max_exhaustive_n: max_n,
        precision_bits,
        x_override,
        slack_override: slack,
    };
    let verifier = FamilyVerifier::new(radix(g)?, radix(h)?, config)?;
    let fam = verifier.verify(&a)?;

    let mut report = RunReport::new("family");
    report
        .param("a", int(&a))
        .param("g", g)
        .param("h", h)
        .param("n_floor", n_floor)
        .param("max_n", max_n)
        .param("convergents", convergents)
        .param("precision_bits", precision_bits);
    report.results = fam
        .solutions
        .iter()
        .zip(fam.values())
        .map(|(n, v)| json!({"n": n, "value": int(v)}))
        .collect();
    let branch = match &fam.branch {
        Branch::ParityExclusion => json!({"kind": "parity_exclusion"}),
        Branch::Exhaustive => json!({"kind": "exhaustive"}),
        Branch::Independent { pair, new_bound } => json!({
            "kind": "independent",
            "pair": pair.as_ref().map(|p| json!({
                "p": int(&p.p),
                "q": int(&p.q),
                "kappa": p.kappa.to_string(),
            })),
            "new_bound": new_bound,
        }),
        Branch::Dependent {
            witness,
            effective_floor,
            small_q,
            large_q,
            unresolved,
        } => json!({
            "kind": "dependent",
            "witness": {"r": witness.r, "s": witness.s, "t": witness.t},
            "effective_floor": effective_floor,
            "small_q": small_q,
            "large_q": large_q,
            "unresolved": unresolved,
        }),
    };
    let (outcome, above, status) = match fam.outcome {
        FamilyOutcome::Complete => ("complete", None, Status::Success),
        FamilyOutcome::Undecided { above } => ("undecided", Some(above), Status::Undecided),
    };
    report.certificate = Some(json!({
        "outcome": outcome,
        "undecided_above": above,
        "x_bound": fam.x_bound,
        "n_a": fam.n_a,
        "n_lemma": fam.n_lemma,
        "slack": fam.slack,
        "tested_up_to": fam.tested_up_to,
        "branch": branch,
    }));
    if let FamilyOutcome::Undecided { above } = fam.outcome {
        log::warn!("could not exclude n > {above}");
    }
    Ok((report, status))
}

fn cmd_bound(a: &str, g: u64, h: u64, n: Option<&str>) -> Result<(RunReport, Status), Failure> {
    let a = integer(a)?;
    let (gr, hr) = (radix(g)?, radix(h)?);
    let mut report = RunReport::new("bound");
    report
        .param("a", int(&a))
        .param("g", g)
        .param("h", h)
        .param("significant_digits", REAL_DIGITS)
        .param("log10_decimals", LOG_DECIMALS);
    let row = |quantity: &str, term: &str, x: &PreciseReal| {
        json!({"quantity": quantity, "term": term, "upper": upper(x), "log10": log10_upper(x)})
    };
    let names = [
        "log(ga)/log h",
        "log g (log agh)^2/(log 2)^3",
        "1.91e7 log a (log log a)^3",
        "5.11e12 log g log agh (log(log g log agh))^2",
    ];
    for (name, t) in names.iter().zip(theorem1_terms(&a, gr, hr)?) {
        if let Some(t) = t {
            report.results.push(row("theorem1", name, &t));
        }
    }
    report.results.push(row("theorem1", "max", &theorem1_bound(&a, gr, hr)?));
    let direct = family_n_bound(&a, gr, hr)?;
    report.results.push(json!({
        "quantity": "family_n_bound",
        "term": "max",
        "upper": real(direct, REAL_DIGITS),
        "log10": fixed(direct.log10(), LOG_DECIMALS),
    }));
    if let Some(n) = n {
        let n = integer(n)?;
        report.param("n", int(&n));
        let names = [
            "log(ga)/log h",
            "log g (log agh)^2/(log 2)^3",
            "142 (log n)^2 log g",
            "2.022e10 log g log agh log n",
        ];
        for (name, t) in names.iter().zip(lemma_main_terms(&a, gr, hr, &n)?) {
            report.results.push(row("lemma_main", name, &t));
        }
        report.results.push(row("lemma_main", "max", &lemma_main_c(&a, gr, hr, &n)?));
    }
    Ok((report, Status::Success))
}

fn cmd_cf(g: u64, h: u64, count: usize, precision_bits: u32) -> Result<(RunReport, Status), Failure> {
    let (gr, hr) = (radix(g)?, radix(h)?);
    let src = RealSource::log_ratio(
        PosRational::from_integer(gr.as_biguint())?,
        PosRational::from_integer(hr.as_biguint())?,
    )?;
    let cf = continued_fraction(&src, count, precision_bits)?;
    let mut report = RunReport::new("cf");
    report
        .param("g", g)
        .param("h", h)
        .param("count", count)
        .param("precision_bits", cf.precision)
        .param("terminated", cf.terminated);
    report.results = cf
        .quotients
        .iter()
        .zip(&cf.convergents)
        .enumerate()
        .map(|(i, (a, c))| json!({"index": i, "quotient": int(a), "p": int(&c.p), "q": int(&c.q)}))
        .collect();
    Ok((report, Status::Success))
}

fn dispatch(cli: &Cli) -> Result<(RunReport, Status), Failure> {
    match &cli.command {
        Command::Check { n, bases } => cmd_check(n, bases),
        Command::Search(args) => cmd_search(args, true),
        Command::Count(args) => cmd_search(args, false),
        Command::Family {
            a,
            g,
            h,
            n_floor,
            max_n,
            convergents,
            x,
            slack,
        } => cmd_family(a, *g, *h, *n_floor, *max_n, *convergents, x.as_deref(), *slack, cli.precision_bits),
        Command::Bound { a, g, h, n } => cmd_bound(a, *g, *h, n.as_deref()),
        Command::Cf { g, h, count } => cmd_cf(*g, *h, *count, cli.precision_bits),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let start = Instant::now();
    match dispatch(&cli) {
        Ok((mut report, status)) => {
            report.timing = start.elapsed().as_secs_f64();
            print!("{}", report.render(cli.format));
            ExitCode::from(status as u8)
        }
        Err(f) => {
            eprintln!("simpal: {}", f.message);
            ExitCode::from(f.status as u8)
        }
    }
}
