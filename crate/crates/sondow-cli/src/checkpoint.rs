//! Checkpointing for long scans.
//!
//! A checkpoint is one JSON document holding the scan's μ, the first value
//! of the next unscanned grid segment, and every record emitted so far
//! (integers as decimal strings).  A resumed run first replays the stored
//! records and then continues on the same segment grid, so its complete
//! output is byte-identical to an uninterrupted run.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::search::SearchRecord;

/// Persisted scan state.  `records` holds everything emitted before
/// `next_segment_lo`; replay plus continuation reproduces the full stream.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub mu: String,
    pub next_segment_lo: String,
    pub records: Vec<SearchRecord>,
}

/// Validated state extracted from a checkpoint file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResumeState {
    pub next_segment_lo: u64,
    pub records: Vec<SearchRecord>,
}

/// Checkpoint IO and validation failures.  A corrupt or inconsistent file
/// is always an error — never a silent partial resume.
#[derive(Debug, thiserror::Error)]
pub enum CheckpointError {
    #[error("cannot read checkpoint {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot write checkpoint {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
    #[error("checkpoint {path} does not parse: {source}")]
    Parse {
        path: String,
        source: serde_json::Error,
    },
    #[error("checkpoint was written for mu = {found}, not mu = {expected}")]
    MuMismatch { expected: String, found: String },
    #[error("checkpoint field {field} is not a decimal integer")]
    BadInteger { field: &'static str },
    #[error(
        "checkpoint resume point {next} is outside [{lo}, {}] or off the \
         segment grid of pitch {len}", .hi + 1
    )]
    OffGrid { next: u64, lo: u64, hi: u64, len: u64 },
    #[error("checkpoint records are not strictly increasing within [{lo}, {next})")]
    DisorderedRecords { lo: u64, next: u64 },
}

/// Writes the checkpoint atomically (temp file + rename); called at segment
/// boundaries.
pub fn checkpoint_save(checkpoint: &Checkpoint, path: &Path) -> Result<(), CheckpointError> {
    let wrap = |source| CheckpointError::Write {
        path: path.display().to_string(),
        source,
    };
    let json = serde_json::to_string(checkpoint).expect("checkpoint serialization is infallible");
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    fs::write(&tmp, json).map_err(wrap)?;
    fs::rename(&tmp, path).map_err(wrap)
}

/// Reads and validates a checkpoint against the requested scan parameters:
/// μ must match, the resume point must sit on the `(lo, segment_len)` grid
/// (or just past `hi` for a finished scan), and the stored records must be
/// strictly increasing below the resume point.
pub fn checkpoint_resume(
    path: &Path,
    mu: i64,
    lo: u64,
    hi: u64,
    segment_len: u64,
) -> Result<ResumeState, CheckpointError> {
    let text = fs::read_to_string(path).map_err(|source| CheckpointError::Read {
        path: path.display().to_string(),
        source,
    })?;
    let checkpoint: Checkpoint =
        serde_json::from_str(&text).map_err(|source| CheckpointError::Parse {
            path: path.display().to_string(),
            source,
        })?;
    if checkpoint.mu != mu.to_string() {
        return Err(CheckpointError::MuMismatch {
            expected: mu.to_string(),
            found: checkpoint.mu,
        });
    }
    let next: u64 = checkpoint
        .next_segment_lo
        .parse()
        .map_err(|_| CheckpointError::BadInteger {
            field: "next_segment_lo",
        })?;
    // The final segment is truncated at hi, so a finished scan resumes at
    // hi + 1; every other resume point must be a whole number of segments
    // past lo.
    let on_grid = next >= lo && next <= hi && (next - lo).is_multiple_of(segment_len);
    if !(on_grid || next == hi + 1) {
        return Err(CheckpointError::OffGrid {
            next,
            lo,
            hi,
            len: segment_len,
        });
    }
    let mut previous: Option<u64> = None;
    for record in &checkpoint.records {
        let n: u64 = record
            .n
            .parse()
            .map_err(|_| CheckpointError::BadInteger { field: "records.n" })?;
        let increasing = previous.is_none_or(|p| p < n);
        if !(increasing && n >= lo && n < next) {
            return Err(CheckpointError::DisorderedRecords { lo, next });
        }
        previous = Some(n);
    }
    Ok(ResumeState {
        next_segment_lo: next,
        records: checkpoint.records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::search_range;

    fn sample_records() -> Vec<SearchRecord> {
        search_range(1, 2, 2000, false).unwrap() // 2, 6, 42, 1806
    }

    #[test]
    fn save_and_resume_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scan.ckpt");
        let checkpoint = Checkpoint {
            mu: "1".into(),
            next_segment_lo: "1026".into(),
            records: sample_records()
                .into_iter()
                .filter(|r| r.n.parse::<u64>().unwrap() < 1026)
                .collect(),
        };
        checkpoint_save(&checkpoint, &path).unwrap();
        let resumed = checkpoint_resume(&path, 1, 2, 100_000, 1024).unwrap();
        assert_eq!(resumed.next_segment_lo, 1026);
        assert_eq!(resumed.records, checkpoint.records);
    }

    #[test]
    fn resume_rejects_mismatched_mu() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scan.ckpt");
        let checkpoint = Checkpoint {
            mu: "1".into(),
            next_segment_lo: "1026".into(),
            records: Vec::new(),
        };
        checkpoint_save(&checkpoint, &path).unwrap();
        assert!(matches!(
            checkpoint_resume(&path, -1, 2, 100_000, 1024),
            Err(CheckpointError::MuMismatch { .. })
        ));
    }

    #[test]
    fn resume_rejects_off_grid_point() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scan.ckpt");
        let checkpoint = Checkpoint {
            mu: "1".into(),
            next_segment_lo: "1000".into(),
            records: Vec::new(),
        };
        checkpoint_save(&checkpoint, &path).unwrap();
        assert!(matches!(
            checkpoint_resume(&path, 1, 2, 100_000, 1024),
            Err(CheckpointError::OffGrid { .. })
        ));
        // …but hi + 1 (finished scan) is always acceptable.
        let done = Checkpoint {
            mu: "1".into(),
            next_segment_lo: "100001".into(),
            records: Vec::new(),
        };
        checkpoint_save(&done, &path).unwrap();
        assert!(checkpoint_resume(&path, 1, 2, 100_000, 1024).is_ok());
    }

    #[test]
    fn resume_rejects_corrupt_and_empty_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scan.ckpt");
        std::fs::write(&path, "").unwrap();
        assert!(matches!(
            checkpoint_resume(&path, 1, 2, 100_000, 1024),
            Err(CheckpointError::Parse { .. })
        ));
        std::fs::write(&path, "{\"mu\": \"1\"").unwrap();
        assert!(matches!(
            checkpoint_resume(&path, 1, 2, 100_000, 1024),
            Err(CheckpointError::Parse { .. })
        ));
        assert!(matches!(
            checkpoint_resume(&dir.path().join("missing.ckpt"), 1, 2, 100_000, 1024),
            Err(CheckpointError::Read { .. })
        ));
    }

    #[test]
    fn resume_rejects_disordered_records() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scan.ckpt");
        let mut records = sample_records();
        records.swap(0, 1);
        let checkpoint = Checkpoint {
            mu: "1".into(),
            next_segment_lo: "2050".into(),
            records,
        };
        checkpoint_save(&checkpoint, &path).unwrap();
        assert!(matches!(
            checkpoint_resume(&path, 1, 2, 100_000, 1024),
            Err(CheckpointError::DisorderedRecords { .. })
        ));
    }
}
