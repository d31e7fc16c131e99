use thiserror::Error;

pub type Result<T> = std::result::Result<T, HnsError>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HnsError {
    #[error("invalid class: {0}")]
    InvalidClass(String),
    #[error("class ({0},{1}) is not in the positive cone")]
    NotInCone(i64, i64),
    #[error("types of different weights mixed: {0}")]
    MixedWeights(String),
    #[error("abscissa {x} outside [0, {max}]")]
    AbscissaOutOfRange { x: i64, max: i64 },
    #[error("operation needs a class of positive rank")]
    RankZero,
    #[error("invalid genus {0}")]
    InvalidGenus(i64),
    #[error("negative order {0}")]
    NegativeOrder(i64),
    #[error("series does not converge: {0}")]
    NotConvergent(String),
    #[error("no volume available for class {0}")]
    MissingVolume(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal consistency check failed: {0}")]
    DefensiveAssertion(String),
    #[error("no admissible hull vertex: {0}")]
    NoAdmissibleVertex(String),
    #[error("peeling did not terminate after {0} steps")]
    NonTermination(usize),
    #[error("invalid zeta datum: {0}")]
    InvalidZeta(String),
    #[error("exact mode unsupported: {0}")]
    UnsupportedRank(String),
    #[error("enumeration window too large: {0}")]
    WindowTooLarge(String),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for HnsError {
    fn from(e: std::io::Error) -> Self {
        HnsError::Io(e.to_string())
    }
}
