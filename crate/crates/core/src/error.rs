use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A sum or product of two elements left the element set.
    #[error("{op} of elements {x} and {y} is not among the ring elements")]
    ClosureViolation { op: &'static str, x: usize, y: usize },

    #[error("element set has no {0}")]
    MissingIdentity(&'static str),

    #[error("ring of order {0} is too large for exhaustive ideal enumeration (max 16)")]
    TooLarge(usize),

    #[error("Jacobson radical methods disagree: maximal-left-ideal route {via_ideals:?}, quasi-regular route {via_quasi_regular:?}")]
    MethodDisagreement {
        via_ideals: Vec<u8>,
        via_quasi_regular: Vec<u8>,
    },

    #[error("unimodular vector {0} generates a non-free cyclic submodule")]
    UnimodularNotFree(String),

    #[error("invalid duad/vector bijection: {0}")]
    InvalidBijection(String),

    #[error("invalid incidence structure: {0}")]
    InvalidIncidence(String),

    #[error("trace of {generator} has the wrong shape: {detail}")]
    TraceShapeViolation { generator: String, detail: String },

    #[error("core geometry has the wrong shape: {0}")]
    CoreShapeViolation(String),

    #[error("no clean triple partition: {0}")]
    PartitionViolation(String),

    #[error("right module does not mirror the left module: {0}")]
    MirrorMismatch(String),

    #[error("unknown export target `{0}`")]
    UnknownTarget(String),

    #[error("unknown format `{0}`")]
    UnknownFormat(String),

    #[error("target `{target}` cannot be exported as `{format}`")]
    UnsupportedExport { target: String, format: String },

    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
