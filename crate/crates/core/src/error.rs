use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("truncation mismatch: degree {left:?} vs {right:?}")]
    TruncationMismatch { left: Option<u32>, right: Option<u32> },
    #[error("series argument has a parameter-free term; valuation must be at least 1")]
    Valuation,
    #[error("series expansion requires a truncation degree")]
    Untruncated,
    #[error("element is not invertible: leading term is not the unit")]
    NotInvertible,
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("unknown twist kind `{0}`")]
    UnknownKind(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("type error: {0}")]
    Type(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown symbol `{name}` at position {pos}")]
    UnknownSymbol { pos: usize, name: String },
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
