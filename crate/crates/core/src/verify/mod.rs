//! Corpus construction, check drivers and report rendering.

pub mod checks;
pub mod corpus;
pub mod lemmas;
pub mod report;

pub use checks::{parse_partition, run_check, CheckName, CheckParams, PARTITION_PRESETS};
pub use corpus::{build_corpus, corpus_from_specs, parse_corpus_file, Corpus, CorpusEntry, DEFAULT_MAX_ORDER};
pub use report::{render_report, CheckReport, Format, Row, Witness};
