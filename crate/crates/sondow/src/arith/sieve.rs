//! Prime sieves: a plain Eratosthenes list and a segmented
//! smallest-prime-factor table for factoring every integer in a window.

use alloc::fmt;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use super::factor::factor_u64;
use super::factorization::Factorization;

/// Cap on the length of a smallest-prime-factor segment (one `u64` per
/// element, so this is a 32 MiB table).
pub const DEFAULT_SEGMENT_LEN: u64 = 1 << 22;

/// Sieve failure: an empty window or one too large to tabulate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SieveError {
    InvalidBounds { lo: u64, hi: u64 },
    SegmentTooLarge { len: u64, max: u64 },
}

impl fmt::Display for SieveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SieveError::InvalidBounds { lo, hi } => {
                write!(f, "invalid sieve bounds: need 2 <= lo <= hi, got [{lo}, {hi}]")
            }
            SieveError::SegmentTooLarge { len, max } => {
                write!(f, "segment of length {len} exceeds the maximum {max}")
            }
        }
    }
}

impl core::error::Error for SieveError {}

/// All primes `≤ n`, ascending.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = usize::try_from(n).expect("sieve bound fits in usize");
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if composite[p] {
            continue;
        }
        primes.push(p as u64);
        let mut m = p * p;
        while m <= n {
            composite[m] = true;
            m += p;
        }
    }
    primes
}

/// Smallest-prime-factor table for the window `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpfSegment {
    lo: u64,
    hi: u64,
    /// `spf[i]` is the least prime factor of `lo + i`, or 0 when `lo + i`
    /// is prime (i.e. its least factor is itself).
    spf: Vec<u64>,
}

/// Tabulates smallest prime factors over `[lo, hi]`, requiring `2 ≤ lo ≤ hi`
/// and a window of at most [`DEFAULT_SEGMENT_LEN`] elements.
pub fn spf_sieve(lo: u64, hi: u64) -> Result<SpfSegment, SieveError> {
    SpfSegment::with_max_len(lo, hi, DEFAULT_SEGMENT_LEN)
}

impl SpfSegment {
    /// As [`spf_sieve`] but with an explicit length cap.
    pub fn with_max_len(lo: u64, hi: u64, max_len: u64) -> Result<Self, SieveError> {
        if lo < 2 || lo > hi {
            return Err(SieveError::InvalidBounds { lo, hi });
        }
        let len = hi - lo + 1;
        if len > max_len {
            return Err(SieveError::SegmentTooLarge { len, max: max_len });
        }
        let mut spf = vec![0u64; usize::try_from(len).expect("segment fits in usize")];
        // Ascending base primes with set-if-unset marking yields least
        // factors: any multiple k·p in range with k ≥ 2, k < p was already
        // hit through k's own smaller factor.
        let root = hi.isqrt();
        for p in primes_up_to(root) {
            let mut m = lo.div_ceil(p) * p;
            while m <= hi {
                let idx = (m - lo) as usize;
                if spf[idx] == 0 {
                    spf[idx] = p;
                }
                m += p;
            }
        }
        Ok(SpfSegment { lo, hi, spf })
    }

    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    /// Least prime factor of `n`, or `None` when `n` is outside the window.
    pub fn spf(&self, n: u64) -> Option<u64> {
        if n < self.lo || n > self.hi {
            return None;
        }
        let v = self.spf[(n - self.lo) as usize];
        Some(if v == 0 { n } else { v })
    }

    /// Canonical factorization of `n` by walking the table; cofactors that
    /// drop below the window are finished by direct factoring.  `None` when
    /// `n` is outside the window.
    pub fn factorization(&self, n: u64) -> Option<Factorization> {
        if n < self.lo || n > self.hi {
            return None;
        }
        let mut parts: Vec<(u64, u32)> = Vec::new();
        let mut m = n;
        while m > 1 {
            if m < self.lo {
                for (p, e) in factor_u64(m) {
                    merge_factor(&mut parts, p, e);
                }
                break;
            }
            let p = self.spf(m).expect("walk stays at or below n");
            let mut e = 0u32;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            merge_factor(&mut parts, p, e);
        }
        parts.sort_unstable_by_key(|&(p, _)| p);
        let factors = parts
            .into_iter()
            .map(|(p, e)| (BigUint::from(p), e))
            .collect();
        Some(Factorization::from_parts_unchecked(BigUint::from(n), factors))
    }
}

fn merge_factor(parts: &mut Vec<(u64, u32)>, p: u64, e: u32) {
    for entry in parts.iter_mut() {
        if entry.0 == p {
            entry.1 += e;
            return;
        }
    }
    parts.push((p, e));
}
