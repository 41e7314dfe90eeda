use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("characteristic {0} is not a prime below 65536")]
    InvalidField(u32),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("objects live over different {0}")]
    AlgebraMismatch(&'static str),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid bimodule: {0}")]
    InvalidBimodule(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("index {index} out of range ({len} available)")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("sequence is not exact: {0}")]
    NotExact(String),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
