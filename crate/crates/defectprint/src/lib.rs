//! File formats, the fingerprint pipeline, exports and the command-line
//! front end for `defectprint-core`.

pub mod error;
pub mod export;
pub mod ingest;
pub mod pipeline;

pub use error::{AppError, ParseError, Result, Stage};
pub use pipeline::{fingerprint_from_paths, run_fingerprint, Dataset, FingerprintRun, InputPaths};
