use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("element belongs to a different structure")]
    StructureMismatch,

    #[error("structure has no transposition relations")]
    NoTranspositions,

    #[error("variable x{0} is not bound")]
    UnboundVariable(usize),

    #[error("invalid structure: {0}")]
    InvalidStructure(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("bound exceeded: {0}")]
    BoundExceeded(String),

    /// An explicit search refusal; `estimate` is the work the request would need.
    #[error("budget refused: {reason} (estimate {estimate}, budget {budget})")]
    Budget {
        reason: String,
        estimate: u128,
        budget: u128,
    },

    #[error("not a hyperbasis: {0}")]
    NotHyperbasis(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("illegal move: {0}")]
    IllegalMove(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
