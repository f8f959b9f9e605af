//! Std companion to the [`sondow`] core crate: a segmented member scan
//! with deterministic parallelism and checkpointing, corpus ingestion for
//! cross-checking published sequences, and the `sondow` command-line tool.

pub mod checkpoint;
pub mod corpus;
pub mod search;
