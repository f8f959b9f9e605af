//! `sondow` — detect, construct, and search μ-Sondow numbers.
//!
//! Exit codes: 0 success, 1 predicate false (`check`, `xcheck`), 2 input
//! error, 3 factoring budget or oracle bound exceeded.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::ops::ControlFlow;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use sondow::arith::{arithmetic_derivative, factorize, FactorBudget, Factorization};
use sondow::predicates::{canonical_mu, classify, is_mu_sondow, OracleBounds};
use sondow_cli::checkpoint::{checkpoint_resume, checkpoint_save, Checkpoint};
use sondow_cli::corpus::{crosscheck, parse_bfile, parse_hints, CrosscheckPredicate, EntryStatus};
use sondow_cli::search::{
    conjecture1_check, conjecture2_search, search_segments, SearchOptions, SearchRecord,
};

#[derive(Parser)]
#[command(
    name = "sondow",
    version,
    about = "Detect, construct, and search mu-Sondow numbers",
    long_about = "A positive integer n is a mu-Sondow number when every prime power p^s \
                  exactly dividing n also divides n/p + mu.  Composite members for \
                  mu = -1 are the Giuga numbers; members for mu = 1 are the weak \
                  primary pseudoperfect numbers.  All integer arguments are decimal \
                  strings of arbitrary size."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one value against every characterization of membership
    Check {
        /// The value to test (positive decimal integer)
        n: String,
        /// The shift mu (decimal integer, any sign)
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        /// Known factorization, e.g. "2,3^2,7"; validated before use
        #[arg(long)]
        factors: Option<String>,
        /// Emit the verdict as one JSON object instead of text
        #[arg(long)]
        json: bool,
    },
    /// Print the canonical residue mu*(n) = (-sum of n/p) mod n
    MuOf {
        /// The value (positive decimal integer)
        n: String,
    },
    /// Scan an interval for members of S_mu, emitting JSON Lines
    Search {
        #[arg(long, allow_hyphen_values = true)]
        mu: i64,
        /// Low end of the interval (inclusive, >= 2)
        #[arg(long)]
        from: u64,
        /// High end of the interval (inclusive)
        #[arg(long)]
        to: u64,
        /// Keep only composite members (Giuga numbers when mu = -1)
        #[arg(long)]
        composite_only: bool,
        /// Worker threads; output is identical for any value
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Checkpoint file: saved each segment, resumed when present
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Write records to this file instead of standard output
        #[arg(long)]
        jsonl: Option<PathBuf>,
        /// Segment length (default 4194304)
        #[arg(long)]
        segment_size: Option<u64>,
        /// Stop after this many segments (for interruption testing)
        #[arg(long)]
        stop_after: Option<u64>,
    },
    /// For each mu in a range, scan 2 <= n <= |mu| for members
    Conjecture1 {
        /// Inclusive range of mu values, e.g. "-20..20"
        #[arg(long, value_name = "A..B", allow_hyphen_values = true)]
        mu_range: String,
    },
    /// Scan |mu| < n <= bound for the first member above |mu|
    Conjecture2 {
        #[arg(long, allow_hyphen_values = true)]
        mu: i64,
        #[arg(long)]
        bound: u64,
    },
    /// Reduce values from a file modulo m (last token of each line)
    Residues {
        /// The modulus
        #[arg(long = "mod", default_value_t = 288)]
        modulus: u64,
        /// Input file: b-file or one value per line; '#' comments ignored
        #[arg(long)]
        input: PathBuf,
    },
    /// Print the arithmetic derivative n' = n * sum of e_p / p
    Derive {
        /// The value (positive decimal integer)
        n: String,
    },
    /// Cross-check a b-file against a predicate
    Xcheck {
        /// OEIS-style b-file to verify
        #[arg(long)]
        bfile: PathBuf,
        /// One of: giuga, weak-ppp, primary-ppp, sondow
        #[arg(long)]
        predicate: String,
        /// Factor hints: JSON Lines of {"n": "...", "factors": [["p", e], ...]}
        #[arg(long)]
        hints: Option<PathBuf>,
        /// The shift, required when --predicate sondow
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
    },
}

/// Failures mapped onto the exit-code contract: input errors exit 2,
/// exceeded budgets or oracle bounds exit 3.
enum CliError {
    Input(String),
    Budget(String),
}

fn input(message: impl Into<String>) -> CliError {
    CliError::Input(message.into())
}

fn main() -> ExitCode {
    // Restore the default SIGPIPE disposition so that piping into a reader
    // that exits early (`sondow search ... | head`) terminates the process
    // quietly instead of panicking on a closed stdout.
    #[cfg(unix)]
    // SAFETY: resets the SIGPIPE handler to the process default before any
    // other thread exists; no data is shared with the signal handler.
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match run(Cli::parse().command) {
        Ok(code) => code,
        Err(CliError::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(CliError::Budget(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(3)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Check {
            n,
            mu,
            factors,
            json,
        } => cmd_check(&n, &mu, factors.as_deref(), json),
        Command::MuOf { n } => {
            let f = factorization_of(&parse_biguint(&n, "n")?)?;
            println!("{}", canonical_mu(&f));
            Ok(ExitCode::SUCCESS)
        }
        Command::Search {
            mu,
            from,
            to,
            composite_only,
            jobs,
            checkpoint,
            jsonl,
            segment_size,
            stop_after,
        } => cmd_search(SearchInvocation {
            mu,
            from,
            to,
            composite_only,
            jobs,
            checkpoint,
            jsonl,
            segment_size,
            stop_after,
        }),
        Command::Conjecture1 { mu_range } => cmd_conjecture1(&mu_range),
        Command::Conjecture2 { mu, bound } => cmd_conjecture2(mu, bound),
        Command::Residues { modulus, input } => cmd_residues(modulus, &input),
        Command::Derive { n } => {
            let f = factorization_of(&parse_biguint(&n, "n")?)?;
            println!("{}", arithmetic_derivative(&f));
            Ok(ExitCode::SUCCESS)
        }
        Command::Xcheck {
            bfile,
            predicate,
            hints,
            mu,
        } => cmd_xcheck(&bfile, &predicate, hints.as_deref(), mu.as_deref()),
    }
}

fn parse_biguint(text: &str, field: &str) -> Result<BigUint, CliError> {
    let value: BigUint = text
        .parse()
        .map_err(|_| input(format!("{field} must be a positive decimal integer, got {text:?}")))?;
    if value.is_zero() {
        return Err(input(format!("{field} must be at least 1")));
    }
    Ok(value)
}

fn parse_bigint(text: &str, field: &str) -> Result<BigInt, CliError> {
    text.parse()
        .map_err(|_| input(format!("{field} must be a decimal integer, got {text:?}")))
}

/// Factors `n` under the default budget, degrading to exit code 3 (never a
/// guess) when the budget runs out.
fn factorization_of(n: &BigUint) -> Result<Factorization, CliError> {
    factorize(n, &FactorBudget::default()).map_err(|e| {
        CliError::Budget(format!(
            "cannot factor {n} within the default budget ({e}); supply --factors"
        ))
    })
}

/// Parses "p,p^e,..." and validates it as a factorization of `n`
/// (primality and product are both checked; any defect is a hard error).
fn parse_factor_list(list: &str, n: &BigUint) -> Result<Factorization, CliError> {
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    for piece in list.split(',') {
        let piece = piece.trim();
        let (base, exponent) = match piece.split_once('^') {
            Some((base, exponent)) => {
                let exponent: u32 = exponent.parse().map_err(|_| {
                    input(format!("exponent in factor {piece:?} must be a positive integer"))
                })?;
                (base, exponent)
            }
            None => (piece, 1),
        };
        if exponent == 0 {
            return Err(input(format!("exponent in factor {piece:?} must be at least 1")));
        }
        let prime: BigUint = base
            .parse()
            .map_err(|_| input(format!("factor {piece:?} is not a decimal integer")))?;
        factors.push((prime, exponent));
    }
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    let mut merged: Vec<(BigUint, u32)> = Vec::with_capacity(factors.len());
    for (prime, exponent) in factors {
        match merged.last_mut() {
            Some((last, e)) if *last == prime => *e += exponent,
            _ => merged.push((prime, exponent)),
        }
    }
    Factorization::from_claimed(n.clone(), merged)
        .map_err(|e| input(format!("--factors rejected: {e}")))
}

fn flag_text(flag: Option<bool>, skip_reason: &str) -> String {
    match flag {
        Some(value) => value.to_string(),
        None => format!("skipped ({skip_reason})"),
    }
}

fn cmd_check(
    n: &str,
    mu: &str,
    factors: Option<&str>,
    json: bool,
) -> Result<ExitCode, CliError> {
    let n = parse_biguint(n, "n")?;
    let mu = parse_bigint(mu, "mu")?;
    let f = match factors {
        Some(list) => parse_factor_list(list, &n)?,
        None => factorization_of(&n)?,
    };
    let verdict = is_mu_sondow(&f, &mu);
    let flags = classify(&f, &mu, &OracleBounds::default());
    debug_assert!(flags.consistent());
    if json {
        let record = SearchRecord::from_classification(&f, &mu, flags);
        println!(
            "{}",
            serde_json::to_string(&record).expect("record serialization is infallible")
        );
    } else {
        println!("n = {} = {}", f.value(), f);
        println!("mu = {mu}");
        println!("canonical residue mu* = {}", canonical_mu(&f));
        println!("member of S_mu: {}", verdict.member);
        println!("  divisibility    {}", flags.divisibility);
        println!(
            "  power_sum       {}",
            flag_text(flags.power_sum, "n above direct-evaluation bound")
        );
        println!(
            "  bernoulli       {}",
            flag_text(flags.bernoulli, "phi(n) above exact-oracle bound")
        );
        println!("  egyptian        {}", flags.egyptian);
        println!("  congruence_sum  {}", flags.congruence_sum);
        println!(
            "  derivative      {}",
            flag_text(flags.derivative, "only defined for mu = 1, or mu = -1 composite")
        );
        let failing: Vec<_> = verdict
            .witnesses
            .iter()
            .filter(|w| !w.residue.is_zero())
            .collect();
        if !failing.is_empty() {
            println!("failing prime powers:");
            for w in failing {
                println!(
                    "  {}^{} leaves residue {} on n/p + mu",
                    w.prime, w.exponent, w.residue
                );
            }
        }
    }
    Ok(ExitCode::from(u8::from(!verdict.member)))
}

struct SearchInvocation {
    mu: i64,
    from: u64,
    to: u64,
    composite_only: bool,
    jobs: usize,
    checkpoint: Option<PathBuf>,
    jsonl: Option<PathBuf>,
    segment_size: Option<u64>,
    stop_after: Option<u64>,
}

fn cmd_search(invocation: SearchInvocation) -> Result<ExitCode, CliError> {
    let options = SearchOptions {
        segment_len: invocation
            .segment_size
            .unwrap_or(SearchOptions::default().segment_len),
        jobs: invocation.jobs,
        ..SearchOptions::default()
    };

    // Resume: replay the stored prefix so this invocation's output is the
    // complete, byte-identical record stream of an uninterrupted run.
    let resume = match &invocation.checkpoint {
        Some(path) if path.exists() => Some(
            checkpoint_resume(
                path,
                invocation.mu,
                invocation.from,
                invocation.to,
                options.segment_len,
            )
            .map_err(|e| input(e.to_string()))?,
        ),
        _ => None,
    };

    let sink: Box<dyn Write> = match &invocation.jsonl {
        Some(path) => Box::new(BufWriter::new(fs::File::create(path).map_err(|e| {
            input(format!("cannot create {}: {e}", path.display()))
        })?)),
        None => Box::new(BufWriter::new(io::stdout())),
    };
    let mut sink = sink;

    let mut emitted: Vec<SearchRecord> = Vec::new();
    let mut start = invocation.from;
    if let Some(resume) = resume {
        for record in &resume.records {
            write_record(&mut sink, record)?;
        }
        emitted = resume.records;
        start = resume.next_segment_lo;
    }

    let mut io_error: Option<CliError> = None;
    let mut segments_done: u64 = 0;
    if start <= invocation.to {
        let completed = search_segments(
            invocation.mu,
            start,
            invocation.to,
            invocation.composite_only,
            &options,
            |segment| {
                for record in &segment.records {
                    if let Err(e) = write_record(&mut sink, record) {
                        io_error = Some(e);
                        return ControlFlow::Break(());
                    }
                }
                if let Some(path) = &invocation.checkpoint {
                    emitted.extend(segment.records.iter().cloned());
                    let checkpoint = Checkpoint {
                        mu: invocation.mu.to_string(),
                        next_segment_lo: segment.next_segment_lo.to_string(),
                        records: emitted.clone(),
                    };
                    if let Err(e) = checkpoint_save(&checkpoint, path) {
                        io_error = Some(input(e.to_string()));
                        return ControlFlow::Break(());
                    }
                }
                segments_done += 1;
                if invocation.stop_after == Some(segments_done) {
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            },
        )
        .map_err(|e| input(e.to_string()))?;
        if let Some(error) = io_error {
            return Err(error);
        }
        if !completed {
            eprintln!("stopped after {segments_done} segment(s); checkpoint holds the frontier");
        }
    }
    sink.flush()
        .map_err(|e| input(format!("cannot flush output: {e}")))?;
    Ok(ExitCode::SUCCESS)
}

fn write_record(sink: &mut Box<dyn Write>, record: &SearchRecord) -> Result<(), CliError> {
    let line = serde_json::to_string(record).expect("record serialization is infallible");
    writeln!(sink, "{line}").map_err(|e| input(format!("cannot write record: {e}")))
}

fn cmd_conjecture1(mu_range: &str) -> Result<ExitCode, CliError> {
    let (a, b) = mu_range
        .split_once("..")
        .ok_or_else(|| input(format!("--mu-range must look like a..b, got {mu_range:?}")))?;
    let a: i64 = a
        .trim()
        .parse()
        .map_err(|_| input(format!("range endpoint {a:?} is not an integer")))?;
    let b: i64 = b
        .trim()
        .parse()
        .map_err(|_| input(format!("range endpoint {b:?} is not an integer")))?;
    if a > b {
        return Err(input(format!("empty range {a}..{b}")));
    }
    for mu in a..=b {
        if mu.unsigned_abs() < 2 {
            println!("mu={mu}: skipped (no n with 2 <= n <= |mu|)");
            continue;
        }
        let report = conjecture1_check(mu).map_err(|e| input(e.to_string()))?;
        match report.witness {
            Some(witness) => println!("mu={mu}: member {witness} found in [2, {}]", report.hi),
            None => println!("mu={mu}: exhausted [2, {}], no member", report.hi),
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_conjecture2(mu: i64, bound: u64) -> Result<ExitCode, CliError> {
    let report = conjecture2_search(mu, bound).map_err(|e| input(e.to_string()))?;
    eprintln!("scanned in {:?}", report.wall_time);
    match report.witness {
        Some(witness) => println!("mu={mu}: member {witness} found in ({}, {}]", report.lo, report.hi),
        None => println!("mu={mu}: exhausted ({}, {}], no member", report.lo, report.hi),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_residues(modulus: u64, path: &std::path::Path) -> Result<ExitCode, CliError> {
    if modulus == 0 {
        return Err(input("--mod must be at least 1"));
    }
    let text = fs::read_to_string(path)
        .map_err(|e| input(format!("cannot read {}: {e}", path.display())))?;
    let modulus_big = BigUint::from(modulus);
    for (number, raw) in text.lines().enumerate() {
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        // Accept both b-files ("index value") and bare value lists: the
        // value is the last whitespace-separated token.
        let token = trimmed
            .split_whitespace()
            .last()
            .expect("non-empty line has a token");
        let value: BigUint = token.parse().map_err(|_| {
            input(format!(
                "line {}: {token:?} is not a decimal integer",
                number + 1
            ))
        })?;
        println!("{} {}", value, &value % &modulus_big);
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_xcheck(
    bfile: &std::path::Path,
    predicate: &str,
    hints: Option<&std::path::Path>,
    mu: Option<&str>,
) -> Result<ExitCode, CliError> {
    let predicate = match predicate {
        "giuga" => CrosscheckPredicate::Giuga,
        "weak-ppp" => CrosscheckPredicate::WeakPpp,
        "primary-ppp" => CrosscheckPredicate::PrimaryPpp,
        "sondow" => {
            let mu = mu.ok_or_else(|| input("--predicate sondow requires --mu"))?;
            CrosscheckPredicate::Sondow(parse_bigint(mu, "mu")?)
        }
        other => {
            return Err(input(format!(
                "unknown predicate {other:?}; expected giuga, weak-ppp, primary-ppp, or sondow"
            )))
        }
    };
    let text = fs::read_to_string(bfile)
        .map_err(|e| input(format!("cannot read {}: {e}", bfile.display())))?;
    let entries = parse_bfile(&text).map_err(|e| input(format!("{}: {e}", bfile.display())))?;
    let hints = match hints {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| input(format!("cannot read {}: {e}", path.display())))?;
            parse_hints(&text).map_err(|e| input(format!("{}: {e}", path.display())))?
        }
        None => Default::default(),
    };
    let report = crosscheck(&entries, &predicate, &hints);
    for outcome in &report.outcomes {
        let status = match &outcome.status {
            EntryStatus::Pass => "pass".to_string(),
            EntryStatus::Fail { detail } => format!("FAIL: {detail}"),
            EntryStatus::Skipped { reason } => format!("skipped: {reason}"),
        };
        println!("{} {}: {status}", outcome.index, outcome.value);
    }
    println!(
        "summary: {} passed, {} failed, {} skipped of {}",
        report.passed,
        report.failed,
        report.skipped,
        report.outcomes.len()
    );
    Ok(ExitCode::from(u8::from(report.failed > 0)))
}
