use thiserror::Error;

use crate::exp::HalfExp;
use crate::identity::Violation;
use crate::theta::ThetaArg;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("coefficient overflow")]
    Overflow,
    #[error("exponent {exp} lies above the validity bound {hi}")]
    BeyondBound { exp: HalfExp, hi: HalfExp },
    #[error("{0} diverges: exponent sum a + b must be positive")]
    Divergent(ThetaArg),
    #[error("insufficient truncation: valid through {got}, need {needed}")]
    InsufficientTruncation { needed: HalfExp, got: HalfExp },
    #[error("{}", join_violations(.0))]
    Constraint(Vec<Violation>),
    #[error("unknown form `{0}`")]
    UnknownForm(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("catalog: {0}")]
    Catalog(String),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
