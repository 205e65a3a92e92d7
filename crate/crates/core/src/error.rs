use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a unit: {0}")]
    NotAUnit(String),
    #[error("incompatible operands: {0}")]
    MixedContext(String),
    #[error("bad constant term: {0}")]
    BadConstantTerm(String),
    #[error("unsupported ring: {0}")]
    RingUnsupported(String),
    #[error("substitution image has a constant term: {0}")]
    NonpositiveValuation(String),
    #[error("not in W: {0}")]
    NotInW(String),
    #[error("word is not stratified: {0}")]
    NotStratified(String),
    #[error("(lambda - 1)/2 is not defined: {0}")]
    HalfNotDefined(String),
    #[error("integrality violation: {0}")]
    IntegralityViolation(String),
    #[error("degree out of range: {0}")]
    DegreeOutOfRange(String),
    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
