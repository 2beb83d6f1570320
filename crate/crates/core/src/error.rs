use std::path::PathBuf;

/// Errors produced by the engine.
///
/// Check failures inside validation reports and experiment sweeps are not
/// errors; they are recorded as report entries. These variants cover bad
/// input and broken internal invariants.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("empty sign vector")]
    EmptySignVector,

    #[error("illegal character {found:?} at position {position}")]
    IllegalCharacter { position: usize, found: char },

    #[error("ground set size {0} exceeds the supported maximum of 64 elements")]
    GroundSetTooLarge(usize),

    #[error("length mismatch: expected {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("empty list of sign vectors")]
    EmptyList,

    #[error("ground set size {n} is over the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("invalid generator matrix: {0}")]
    InvalidGenerators(String),

    #[error("no generic arrangement found after {0} attempts")]
    GenericSearchFailed(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{path}: line {line}: {reason}")]
    Malformed {
        path: PathBuf,
        line: usize,
        reason: String,
    },

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("sign vector {0} is not a tope of the instance")]
    NotATope(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("negative entry {value} at index {index} of the complementary f-vector")]
    NegativeOmega { index: usize, value: String },

    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
