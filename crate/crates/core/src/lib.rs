//! Curation, quality scanning, dataset assembly, similarity metrics and
//! paired statistics for function-level Python code corpora.

pub mod curate;
pub mod dataset;
pub mod format;
pub mod ids;
pub mod ingest;
pub mod jsonl;
pub mod metrics;
pub mod pylex;
pub mod qualscan;
pub mod report;
pub mod stats;
pub mod syntax;
