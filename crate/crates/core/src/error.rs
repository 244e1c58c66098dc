use thiserror::Error;

use crate::laurent::VarId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    ZeroDivision,
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("coefficient modes differ: {left} vs {right}")]
    ModeMismatch { left: String, right: String },
    #[error("substitution value must be a single unit monomial, got {0} terms")]
    NonUnitSubstitution(usize),
    #[error("degree of the zero polynomial is undefined")]
    EmptyPolynomial,
    #[error("variable {0} has no value")]
    UnboundVariable(String),
    #[error("variable {0} is not among the polynomial's variables")]
    UnknownVariable(VarId),
    #[error("too many variables ({0}); at most {max} are supported", max = crate::laurent::MAX_VARS)]
    TooManyVariables(usize),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("malformed graph description: {0}")]
    MalformedSpec(String),
    #[error("operation requires a domain-wall grid")]
    NotDwbcGraph,
    #[error("not an alternating sign matrix: {0}")]
    InvalidAsm(String),
    #[error("index range: {0}")]
    IndexRange(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
}
