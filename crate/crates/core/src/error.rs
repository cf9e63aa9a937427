use thiserror::Error;

/// Errors produced while building or checking covers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range (graph has {count} vertices)")]
    InvalidVertex { vertex: usize, count: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("graph is disconnected: vertex {0} is unreachable from the root")]
    Disconnected(usize),

    #[error("instance has {size} vertices, above the cap of {cap}")]
    SizeCap { size: usize, cap: usize },

    #[error("slab provider broke its contract on slab [{lo}, {hi}) at scale {rho}: {reason}")]
    Provider {
        lo: f64,
        hi: f64,
        rho: f64,
        reason: String,
    },

    #[error("invalid path decomposition: {0}")]
    Decomposition(String),

    #[error("invalid embedding: {0}")]
    Embedding(String),

    #[error("coverage ledger violated at level {level}: observed {observed}, required {required}")]
    CoverageLedger {
        level: usize,
        observed: usize,
        required: usize,
    },

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
