use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("pole at q0")]
    Pole,
    #[error("object mismatch: {0}")]
    ObjectMismatch(String),
    #[error("not scalar")]
    NotScalar,
    #[error("singular")]
    Singular,
    #[error("fuel exhausted")]
    FuelExhausted,
    #[error("unsupported generator: {0}")]
    UnsupportedGenerator(String),
    #[error("divisibility violated")]
    DivisibilityViolated,
    #[error("dimension cap exceeded: {dim} > {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("negative label at {pos}")]
    NegativeLabel { pos: usize },
    #[error("malformed braid: {0}")]
    MalformedBraid(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
