//! Corpus ingestion and cross-checking.
//!
//! Reads OEIS-style b-files (`index value` per line, `#` comments allowed),
//! optional factor hints (one JSON object per line), and re-verifies every
//! entry against a chosen predicate using this crate's own arithmetic.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use sondow::arith::{factorize, FactorBudget, FactorError, Factorization, FactorizationError};
use sondow::predicates::{is_giuga, is_mu_sondow, is_primary_ppp, is_weak_ppp};

/// One line of a b-file: `a(index) = value`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFileEntry {
    pub index: i64,
    pub value: BigUint,
}

/// Parse or validation failures in corpus inputs, tagged with the
/// offending line number.
#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("line {line}: expected `index value`, found {found} fields")]
    Malformed { line: usize, found: usize },
    #[error("line {line}: index is not an integer")]
    BadIndex { line: usize },
    #[error("line {line}: value is not a positive integer")]
    BadValue { line: usize },
    #[error("line {line}: index {index} does not increase (previous was {previous})")]
    NonIncreasingIndex {
        line: usize,
        index: i64,
        previous: i64,
    },
    #[error("hint line {line}: {source}")]
    HintSyntax {
        line: usize,
        source: serde_json::Error,
    },
    #[error("hint line {line}: integer field does not parse")]
    HintInteger { line: usize },
    #[error("hint line {line}: {source}")]
    HintRejected {
        line: usize,
        source: FactorizationError,
    },
}

/// Parses a b-file.  Blank lines and `#` comments are skipped; every data
/// line must be exactly `index value` with strictly increasing indices.
pub fn parse_bfile(text: &str) -> Result<Vec<BFileEntry>, CorpusError> {
    let mut entries: Vec<BFileEntry> = Vec::new();
    for (number, raw) in text.lines().enumerate() {
        let line = number + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        let [index, value] = fields[..] else {
            return Err(CorpusError::Malformed {
                line,
                found: fields.len(),
            });
        };
        let index: i64 = index.parse().map_err(|_| CorpusError::BadIndex { line })?;
        let value: BigUint = value.parse().map_err(|_| CorpusError::BadValue { line })?;
        if value == BigUint::ZERO {
            return Err(CorpusError::BadValue { line });
        }
        if let Some(previous) = entries.last() {
            if index <= previous.index {
                return Err(CorpusError::NonIncreasingIndex {
                    line,
                    index,
                    previous: previous.index,
                });
            }
        }
        entries.push(BFileEntry { index, value });
    }
    Ok(entries)
}

#[derive(serde::Deserialize)]
struct HintLine {
    n: String,
    factors: Vec<(String, u32)>,
}

/// Parses factor hints: one `{"n": "...", "factors": [["p", e], ...]}`
/// object per line.  Every hint is fully validated on ingestion — claimed
/// primes are primality-tested and the product is recomputed — so an
/// invalid hint is a hard error, never a silent fallback.
pub fn parse_hints(text: &str) -> Result<BTreeMap<BigUint, Factorization>, CorpusError> {
    let mut hints = BTreeMap::new();
    for (number, raw) in text.lines().enumerate() {
        let line = number + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let hint: HintLine = serde_json::from_str(trimmed)
            .map_err(|source| CorpusError::HintSyntax { line, source })?;
        let n: BigUint = hint
            .n
            .parse()
            .map_err(|_| CorpusError::HintInteger { line })?;
        let mut factors = Vec::with_capacity(hint.factors.len());
        for (prime, exponent) in &hint.factors {
            let prime: BigUint = prime
                .parse()
                .map_err(|_| CorpusError::HintInteger { line })?;
            factors.push((prime, *exponent));
        }
        let factorization = Factorization::from_claimed(n.clone(), factors)
            .map_err(|source| CorpusError::HintRejected { line, source })?;
        hints.insert(n, factorization);
    }
    Ok(hints)
}

/// Predicate to cross-check a corpus against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CrosscheckPredicate {
    Giuga,
    WeakPpp,
    PrimaryPpp,
    Sondow(BigInt),
}

/// Outcome for a single entry.  An entry that cannot be factored within
/// budget and has no hint is reported as skipped, never as pass or fail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EntryStatus {
    Pass,
    Fail { detail: String },
    Skipped { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryOutcome {
    pub index: i64,
    pub value: BigUint,
    pub status: EntryStatus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrosscheckReport {
    pub outcomes: Vec<EntryOutcome>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

/// Re-verifies every entry against `predicate`.  Factorizations come from
/// `hints` when present, otherwise from `factorize` under the default
/// budget.
pub fn crosscheck(
    entries: &[BFileEntry],
    predicate: &CrosscheckPredicate,
    hints: &BTreeMap<BigUint, Factorization>,
) -> CrosscheckReport {
    let budget = FactorBudget::default();
    let mut outcomes = Vec::with_capacity(entries.len());
    let (mut passed, mut failed, mut skipped) = (0usize, 0usize, 0usize);
    for entry in entries {
        let factorization = match hints.get(&entry.value) {
            Some(hint) => Ok(hint.clone()),
            None => factorize(&entry.value, &budget),
        };
        let status = match factorization {
            Err(error @ FactorError::BudgetExceeded { .. }) => EntryStatus::Skipped {
                reason: format!("no hint and {error}"),
            },
            Ok(factorization) => {
                let holds = match predicate {
                    CrosscheckPredicate::Giuga => Ok(is_giuga(&factorization)),
                    CrosscheckPredicate::WeakPpp => Ok(is_weak_ppp(&factorization)),
                    CrosscheckPredicate::PrimaryPpp => {
                        is_primary_ppp(&factorization).map_err(|e| e.to_string())
                    }
                    CrosscheckPredicate::Sondow(mu) => {
                        Ok(is_mu_sondow(&factorization, mu).member)
                    }
                };
                match holds {
                    Ok(true) => EntryStatus::Pass,
                    Ok(false) => EntryStatus::Fail {
                        detail: "predicate does not hold".into(),
                    },
                    Err(detail) => EntryStatus::Fail { detail },
                }
            }
        };
        match &status {
            EntryStatus::Pass => passed += 1,
            EntryStatus::Fail { .. } => failed += 1,
            EntryStatus::Skipped { .. } => skipped += 1,
        }
        outcomes.push(EntryOutcome {
            index: entry.index,
            value: entry.value.clone(),
            status,
        });
    }
    CrosscheckReport {
        outcomes,
        passed,
        failed,
        skipped,
    }
}
