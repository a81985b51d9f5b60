use thiserror::Error;

/// Errors produced anywhere in the pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("unsupported ring family: {0}")]
    UnsupportedFamily(String),
    #[error("ring order {order} exceeds the cap of {cap} elements")]
    OrderCap { order: u64, cap: usize },
    #[error("factor {0} is not a local ring")]
    NotLocal(usize),
    #[error("a single local factor is outside the classification (need at least two factors)")]
    SingleFactor,
    #[error("unknown export format: {0}")]
    UnknownFormat(String),
    #[error("graph input is disconnected")]
    Disconnected,
    #[error("malformed rotation system: {0}")]
    MalformedRotation(String),
    #[error("malformed graph: {0}")]
    MalformedGraph(String),
    #[error("search budget exhausted")]
    BudgetExhausted,
    #[error("certificate rejected: {0}")]
    Certificate(String),
    #[error("invalid manifest: {0}")]
    Manifest(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
