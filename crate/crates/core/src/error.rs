use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degree sequence is empty; a tree needs at least 2 levels")]
    TooFewLevels,

    #[error("degree d{level} = {degree} is below 2")]
    DegreeTooSmall { level: usize, degree: u32 },

    #[error("cannot parse degree sequence {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("tree would have {projected} vertices, over the cap of {cap}")]
    TooLarge { projected: String, cap: u64 },

    #[error("counterexample family needs an even k >= 6, got k = {0}")]
    BadCounterexampleLevels(usize),

    #[error("malformed partition: {0}")]
    MalformedPartition(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not a generalized Bethe divisor: {0}")]
    NotJacobi(String),

    #[error("division by the zero polynomial")]
    ZeroDivisor,

    #[error("matrix is not symmetric at ({row}, {col})")]
    Asymmetric { row: usize, col: usize },

    #[error("eigensolver did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("eigenpair {index} has residual {residual:e}, above {bound:e}")]
    Residual {
        index: usize,
        residual: f64,
        bound: f64,
    },

    #[error("invalid search configuration: {0}")]
    SearchConfig(String),
}
