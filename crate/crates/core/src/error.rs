use thiserror::Error;

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("field degree {0} outside 1..=24")]
    FieldDegree(u32),
    #[error("F_2^{d} is not a subfield of F_2^{k}")]
    NotSubfield { d: u32, k: u32 },
    #[error("point counts do not come from an integral L-polynomial")]
    NonIntegralLpoly,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("group action is inconsistent: {0}")]
    InconsistentAction(String),
    #[error("element list is not closed under composition")]
    NotClosed,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("projective point has an all-zero block")]
    ZeroBlock,
    #[error("subset of size {size} exceeds tree depth {depth}")]
    SubsetTooLarge { size: usize, depth: usize },
    #[error("degenerate model: {0}")]
    Degenerate(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("census is missing stratum {0}")]
    MissingStratum(String),
}

pub type Result<T> = std::result::Result<T, CensusError>;
