//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} must be finite")]
    NonFinite { what: &'static str },

    #[error("node index {index} out of range for a network with nodes 0..={max}")]
    NodeOutOfRange { index: usize, max: usize },

    #[error("forbidden link endpoint: {reason}")]
    ForbiddenEndpoint { reason: String },

    #[error("capacity must be a finite nonnegative number of bits, got {value}")]
    InvalidCapacity { value: f64 },

    #[error("invalid network document: {0}")]
    InvalidDocument(String),

    #[error("network invariant violated ({field}): {message}")]
    InvariantViolation {
        field: &'static str,
        message: String,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("{num_relays} relays exceeds the exhaustive enumeration cap of {cap}")]
    TooManyRelays { num_relays: usize, cap: usize },

    #[error("operation requires a layered network")]
    NotLayered,

    #[error("no path connects the source to the destination")]
    Disconnected,

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("index set must not be empty")]
    EmptyIndexSet,

    #[error("index set contains duplicate index {index}")]
    DuplicateIndex { index: usize },

    #[error("subset size {k} out of range for {n} elements")]
    SubsetSizeOutOfRange { k: usize, n: usize },

    #[error("matrix order {n} exceeds the subset-enumeration cap of {cap}")]
    MatrixTooLarge { n: usize, cap: usize },

    #[error("search space of {size} selections exceeds the cap of {cap}")]
    SearchSpaceTooLarge { size: u128, cap: u128 },

    #[error("invalid construction parameters: {0}")]
    InvalidConstruction(String),

    #[error("tight example check failed ({claim}): {detail}")]
    TightExampleMismatch { claim: &'static str, detail: String },

    #[error("invalid ensemble: {0}")]
    InvalidEnsemble(String),
}
