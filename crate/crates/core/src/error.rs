use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("indeterminate division: the denominator enclosure contains zero")]
    IndeterminateDivision,
    #[error("negative or non-real base with a non-integer exponent")]
    NegativeBase,
    #[error("malformed fusion ring: {0}")]
    Shape(String),
    #[error("fusion ring fails validation: {0}")]
    Invalid(String),
    #[error("fusion ring is not commutative")]
    NonCommutative,
    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("could not separate eigenspaces: {0}")]
    Separation(String),
    #[error("indeterminate: {0}")]
    Indeterminate(String),
    #[error("unsuitable dimension character: {0}")]
    DimensionCharacter(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error("invalid modular data: {0}")]
    Modular(String),
    #[error("schema violation at {pointer}: {message}")]
    Schema { pointer: String, message: String },
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
