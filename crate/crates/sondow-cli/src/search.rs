//! Segmented range scan for μ-Sondow numbers, plus bounded conjecture
//! verification and residue tables.
//!
//! The scan predicate is the congruence-sum characterization — one modular
//! sum per candidate, accumulated sieve-style — and every hit is re-verified
//! with the per-prime-power divisibility test before it is emitted, so a
//! sieve defect can only lose throughput, never correctness.
//!
//! Work is split into fixed segments laid on the grid `lo + i·segment_len`.
//! Workers claim segment indices from a shared counter and results are
//! emitted strictly in grid order, so the record stream is a pure function
//! of `(μ, lo, hi, segment_len)` — independent of worker count, and stable
//! across checkpoint interruptions that resume on the same grid.

use std::collections::BTreeMap;
use std::ops::ControlFlow;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::mpsc;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use sondow::arith::{factor_u64, is_prime_u64, primes_up_to, spf_sieve, Factorization};
use sondow::arith::{FactorizationError, DEFAULT_SEGMENT_LEN};
use sondow::predicates::{classify, is_mu_sondow, CharacterizationFlags, OracleBounds};

/// Largest admissible scan endpoint: keeps every intermediate sum inside
/// `u64` and every signed comparison inside `i128`.
pub const MAX_SCAN_HI: u64 = 1 << 62;

/// Engine tuning knobs; the defaults match the documented contract.
#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Segment length; also the checkpoint/emission grid pitch.
    pub segment_len: u64,
    /// Number of worker threads (1 = the determinism oracle path).
    pub jobs: usize,
    /// Bounds for the per-hit oracle flags.
    pub oracle_bounds: OracleBounds,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            segment_len: DEFAULT_SEGMENT_LEN,
            jobs: 1,
            oracle_bounds: OracleBounds::default(),
        }
    }
}

/// Search/conjecture failure modes.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("invalid range: need 2 <= lo <= hi <= {MAX_SCAN_HI}, got [{lo}, {hi}]")]
    InvalidRange { lo: u64, hi: u64 },
    #[error("invalid segment length {len}: must be in [1, {max}]")]
    InvalidSegmentLen { len: u64, max: u64 },
    #[error("search needs at least one worker")]
    NoWorkers,
    #[error("conjecture interval [2, |mu|] is empty for mu = {mu}")]
    EmptyInterval { mu: i64 },
    #[error("bound {bound} does not exceed |mu| = {mu_abs}")]
    BoundTooSmall { mu_abs: u64, bound: u64 },
}

/// One confirmed member, as emitted by the scan.  All integers are decimal
/// strings so records survive any JSON reader unchanged.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub n: String,
    pub mu: String,
    pub factors: Vec<(String, u32)>,
    pub flags: CharacterizationFlags,
    pub composite: bool,
}

/// A [`SearchRecord`] whose decimal fields cannot be reassembled.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RecordError {
    #[error("record field is not a decimal integer: {field}")]
    BadInteger { field: &'static str },
    #[error(transparent)]
    Factorization(#[from] FactorizationError),
}

impl SearchRecord {
    fn new(n: u64, mu: i64, f: &Factorization, flags: CharacterizationFlags) -> Self {
        debug_assert_eq!(f.value(), &BigUint::from(n));
        Self::from_classification(f, &BigInt::from(mu), flags)
    }

    /// Builds a record straight from a classified factorization; the scan
    /// and the single-value checker share this so their JSON agrees byte
    /// for byte.
    pub fn from_classification(
        f: &Factorization,
        mu: &BigInt,
        flags: CharacterizationFlags,
    ) -> Self {
        SearchRecord {
            n: f.value().to_string(),
            mu: mu.to_string(),
            factors: f
                .factors()
                .iter()
                .map(|(p, e)| (p.to_string(), *e))
                .collect(),
            flags,
            composite: f.is_composite(),
        }
    }

    /// Rebuilds the validated factorization (primality and product are
    /// re-checked, so a tampered record cannot round-trip).
    pub fn factorization(&self) -> Result<Factorization, RecordError> {
        let n: BigUint = self
            .n
            .parse()
            .map_err(|_| RecordError::BadInteger { field: "n" })?;
        let factors = self
            .factors
            .iter()
            .map(|(p, e)| {
                p.parse()
                    .map(|p| (p, *e))
                    .map_err(|_| RecordError::BadInteger { field: "factors" })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Factorization::from_claimed(n, factors)?)
    }
}

/// Records from one finished segment, tagged with the grid geometry needed
/// for checkpointing.
#[derive(Debug, Clone)]
pub struct SegmentOutput {
    pub segment_lo: u64,
    pub segment_hi: u64,
    /// First value of the next grid segment (`segment_hi + 1`).
    pub next_segment_lo: u64,
    pub records: Vec<SearchRecord>,
}

/// Scan report for a conjecture-style interval `(lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureReport {
    pub mu: i64,
    /// Scanned interval is `(lo, hi]`.
    pub lo: u64,
    pub hi: u64,
    pub witness: Option<u64>,
    pub exhausted: bool,
    pub wall_time: Duration,
}

/// All members of `𝔖_μ` in `[lo, hi]`, ascending, each re-verified and
/// classified.  `composite_only` drops primes (for μ = −1 every prime is a
/// member and would flood the output).
pub fn search_range(
    mu: i64,
    lo: u64,
    hi: u64,
    composite_only: bool,
) -> Result<Vec<SearchRecord>, SearchError> {
    let mut out = Vec::new();
    search_segments(
        mu,
        lo,
        hi,
        composite_only,
        &SearchOptions::default(),
        |seg| {
            out.extend(seg.records);
            ControlFlow::Continue(())
        },
    )?;
    Ok(out)
}

/// Runs the segmented scan, handing each finished segment to `emit` in grid
/// order.  Returns `Ok(true)` if the whole range was scanned, `Ok(false)`
/// if `emit` broke off early.
pub fn search_segments<F>(
    mu: i64,
    lo: u64,
    hi: u64,
    composite_only: bool,
    options: &SearchOptions,
    mut emit: F,
) -> Result<bool, SearchError>
where
    F: FnMut(SegmentOutput) -> ControlFlow<()>,
{
    validate_range(lo, hi)?;
    let len = options.segment_len;
    if len == 0 || len > DEFAULT_SEGMENT_LEN {
        return Err(SearchError::InvalidSegmentLen {
            len,
            max: DEFAULT_SEGMENT_LEN,
        });
    }
    if options.jobs == 0 {
        return Err(SearchError::NoWorkers);
    }
    let base_primes = primes_up_to(hi.isqrt());
    let total_segments = (hi - lo) / len + 1;

    if options.jobs == 1 {
        for index in 0..total_segments {
            let seg = scan_one_segment(mu, lo, hi, len, index, composite_only, options, &base_primes);
            if emit(seg).is_break() {
                return Ok(false);
            }
        }
        return Ok(true);
    }

    // Multi-worker path: claim segment indices from a shared counter, send
    // results to a single collector that re-orders them on the grid.
    let counter = AtomicU64::new(0);
    let stop = AtomicBool::new(false);
    let (tx, rx) = mpsc::channel::<(u64, SegmentOutput)>();
    let mut broke = false;
    std::thread::scope(|scope| {
        let counter = &counter;
        let stop = &stop;
        let base_primes = &base_primes;
        for _ in 0..options.jobs {
            let tx = tx.clone();
            scope.spawn(move || loop {
                if stop.load(Ordering::Relaxed) {
                    break;
                }
                let index = counter.fetch_add(1, Ordering::Relaxed);
                if index >= total_segments {
                    break;
                }
                let seg =
                    scan_one_segment(mu, lo, hi, len, index, composite_only, options, base_primes);
                if tx.send((index, seg)).is_err() {
                    break;
                }
            });
        }
        drop(tx);

        let mut pending: BTreeMap<u64, SegmentOutput> = BTreeMap::new();
        let mut next = 0u64;
        for (index, seg) in rx.iter() {
            pending.insert(index, seg);
            while let Some(seg) = pending.remove(&next) {
                if emit(seg).is_break() {
                    stop.store(true, Ordering::Relaxed);
                    broke = true;
                    break;
                }
                next += 1;
            }
            if broke {
                break;
            }
        }
        // Receiver drops here; workers still sweeping see the send fail and
        // exit, then the scope joins them.
    });
    Ok(!broke)
}

fn validate_range(lo: u64, hi: u64) -> Result<(), SearchError> {
    if lo < 2 || lo > hi || hi > MAX_SCAN_HI {
        return Err(SearchError::InvalidRange { lo, hi });
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn scan_one_segment(
    mu: i64,
    lo: u64,
    hi: u64,
    len: u64,
    index: u64,
    composite_only: bool,
    options: &SearchOptions,
    base_primes: &[u64],
) -> SegmentOutput {
    let segment_lo = lo + index * len;
    let segment_hi = (segment_lo + (len - 1)).min(hi);
    let hits = sweep_hits(mu, segment_lo, segment_hi, base_primes);
    let records = if hits.is_empty() {
        Vec::new()
    } else {
        records_for_hits(mu, segment_lo, segment_hi, &hits, composite_only, options)
    };
    SegmentOutput {
        segment_lo,
        segment_hi,
        next_segment_lo: segment_hi + 1,
        records,
    }
}

/// The sieve-style sweep: for each `n` in `[lo, hi]` accumulate
/// `Σ_{p|n} n/p (mod n)` and keep the unfactored cofactor, then test
/// `Σ + μ ≡ 0 (mod n)`.  Returns the hit values in order.
fn sweep_hits(mu: i64, lo: u64, hi: u64, base_primes: &[u64]) -> Vec<u64> {
    let len = (hi - lo + 1) as usize;
    let mut remaining: Vec<u64> = (lo..=hi).collect();
    let mut sum = vec![0u64; len];

    for &p in base_primes {
        if p * p > hi {
            break;
        }
        // Walk k·p through the segment: the summand n/p is the counter k
        // itself, so no division happens in the hot loop.
        let mut k = lo.div_ceil(p);
        let mut m = k * p;
        while m <= hi {
            let i = (m - lo) as usize;
            let mut s = sum[i] + k; // both < m, so no overflow
            if s >= m {
                s -= m;
            }
            sum[i] = s;
            let r = &mut remaining[i];
            while (*r).is_multiple_of(p) {
                *r /= p;
            }
            k += 1;
            m += p;
        }
    }

    let mut hits = Vec::new();
    for i in 0..len {
        let n = lo + i as u64;
        let mut s = sum[i];
        let leftover = remaining[i];
        if leftover > 1 {
            // Any cofactor surviving all primes ≤ √hi is a single prime
            // (> √n), contributing n/leftover — which is 1 when n itself
            // is that prime.
            let mut t = s + n / leftover;
            if t >= n {
                t -= n;
            }
            s = t;
        }
        if (s as i128 + mu as i128).rem_euclid(n as i128) == 0 {
            hits.push(n);
        }
    }
    hits
}

/// Re-verifies and classifies the hits of one segment.  Factorizations come
/// from a smallest-prime-factor table over the segment.
fn records_for_hits(
    mu: i64,
    lo: u64,
    hi: u64,
    hits: &[u64],
    composite_only: bool,
    options: &SearchOptions,
) -> Vec<SearchRecord> {
    let spf = spf_sieve(lo, hi).expect("segment length is within the sieve cap");
    let mu_big = BigInt::from(mu);
    let mut records = Vec::new();
    for &n in hits {
        if composite_only && is_prime_u64(n) {
            continue;
        }
        let f = spf.factorization(n).expect("hit lies within the segment");
        let verdict = is_mu_sondow(&f, &mu_big);
        assert!(
            verdict.member,
            "scan predicate and divisibility check disagree at n = {n}"
        );
        let flags = classify(&f, &mu_big, &options.oracle_bounds);
        records.push(SearchRecord::new(n, mu, &f, flags));
    }
    records
}

/// Smallest member of `𝔖_μ` in `[lo, hi]`, re-verified, without building
/// full records.  `None` when the interval has no member.
fn find_first_member(mu: i64, lo: u64, hi: u64) -> Result<Option<u64>, SearchError> {
    validate_range(lo, hi)?;
    let base_primes = primes_up_to(hi.isqrt());
    let len = DEFAULT_SEGMENT_LEN;
    let mut seg_lo = lo;
    while seg_lo <= hi {
        let seg_hi = (seg_lo + (len - 1)).min(hi);
        if let Some(&n) = sweep_hits(mu, seg_lo, seg_hi, &base_primes).first() {
            let factors = factor_u64(n)
                .into_iter()
                .map(|(p, e)| (BigUint::from(p), e))
                .collect::<Vec<_>>();
            let f = Factorization::from_prime_powers(factors)
                .expect("complete factorization is canonical");
            assert!(
                is_mu_sondow(&f, &BigInt::from(mu)).member,
                "scan predicate and divisibility check disagree at n = {n}"
            );
            return Ok(Some(n));
        }
        seg_lo = seg_hi + 1;
    }
    Ok(None)
}

/// Scans `[2, |μ|]` for a member of `𝔖_μ` (defined for `|μ| ≥ 2`); the
/// conjecture asserts one always exists apart from μ ∈ {2, −2, 4, 16}.
pub fn conjecture1_check(mu: i64) -> Result<ConjectureReport, SearchError> {
    let mu_abs = mu.unsigned_abs();
    if mu_abs < 2 {
        return Err(SearchError::EmptyInterval { mu });
    }
    let started = Instant::now();
    let witness = find_first_member(mu, 2, mu_abs)?;
    Ok(ConjectureReport {
        mu,
        lo: 1,
        hi: mu_abs,
        witness,
        exhausted: witness.is_none(),
        wall_time: started.elapsed(),
    })
}

/// Scans `(|μ|, bound]` for a member of `𝔖_μ`; the conjecture asserts one
/// exists for every μ, so exhaustion at a desk bound is recorded evidence,
/// not refutation.
pub fn conjecture2_search(mu: i64, bound: u64) -> Result<ConjectureReport, SearchError> {
    let mu_abs = mu.unsigned_abs();
    if bound <= mu_abs {
        return Err(SearchError::BoundTooSmall { mu_abs, bound });
    }
    let started = Instant::now();
    let lo = (mu_abs + 1).max(2);
    let witness = find_first_member(mu, lo, bound)?;
    Ok(ConjectureReport {
        mu,
        lo: mu_abs,
        hi: bound,
        witness,
        exhausted: witness.is_none(),
        wall_time: started.elapsed(),
    })
}

/// Reduces each value modulo `modulus` (≥ 1), preserving input order.
pub fn residue_table(values: &[BigUint], modulus: u64) -> Vec<u64> {
    assert!(modulus >= 1, "residue_table requires modulus >= 1");
    let m = BigUint::from(modulus);
    values
        .iter()
        .map(|v| (v % &m).to_u64().expect("residue below a u64 modulus"))
        .collect()
}
