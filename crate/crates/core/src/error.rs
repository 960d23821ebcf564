use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error: {message}")]
pub struct ParseError {
    pub message: String,
}

impl ParseError {
    pub fn new(message: impl Into<String>) -> Self {
        ParseError { message: message.into() }
    }
}

/// Why a Hopf-pair cancellation was refused.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CancelFailure {
    #[error("components {0} and {1} are the same")]
    SameComponent(usize, usize),
    #[error("component index {0} out of range")]
    OutOfRange(usize),
    #[error("component {0} has framing {1}, expected 0")]
    NonzeroFraming(usize, String),
    #[error("components {0} and {1} link {2} times, expected +-1")]
    NonUnitLinking(usize, usize, String),
    #[error("component {0} links component {1} outside the pair")]
    ExternalLinking(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("coset budget must be at least 1")]
    ZeroBudget,
    #[error("generator {0} is used in a relator but not declared")]
    UndeclaredGenerator(String),
    #[error("generator {0} is declared twice")]
    DuplicateGenerator(String),
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is {rows}x{cols}, expected {expected}x{expected}")]
    WrongSize { rows: usize, cols: usize, expected: usize },
    #[error("matrix rows have unequal length")]
    Ragged,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("determinant is {0}, expected +1")]
    NotSpecialLinear(String),
    #[error("search bound {0} outside 0..=3")]
    SearchBound(i64),
    #[error("census order bound {0} exceeds 120")]
    CensusBound(u64),
    #[error("copy index {0} is not 1 or 2")]
    CopyIndex(u8),
    #[error("invalid surgery: {0}")]
    InvalidSurgery(String),
    #[error("surgery targets copy {spec} but the piece is copy {piece}")]
    CopyMismatch { spec: u8, piece: u8 },
    #[error("pieces share generators: {0}")]
    OverlappingGenerators(String),
    #[error("slide sign must be +1 or -1, got {0}")]
    SlideSign(i64),
    #[error("component label {0} is used twice")]
    DuplicateLabel(String),
    #[error("slide indices {0} and {1} must differ and lie in range")]
    BadSlide(usize, usize),
    #[error("pair cancellation rejected: {0}")]
    Cancel(#[from] CancelFailure),
    #[error("linking matrix is not symmetric")]
    NotSymmetric,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
