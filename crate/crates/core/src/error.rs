use thiserror::Error;

use crate::parser::ParseError;
use crate::semantics::ValuationMode;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("atom `{0}` is not assigned a value")]
    UnassignedAtom(String),
    #[error("{count} atoms exceed the {mode} enumeration cap of {cap}")]
    AtomCapExceeded {
        count: usize,
        cap: usize,
        mode: ValuationMode,
    },
    #[error("{count} premises exceed the subset-search cap of {cap}")]
    PremiseCapExceeded { count: usize, cap: usize },
    #[error("formula `{0}` contains a conditional")]
    ContainsConditional(String),
    #[error("the conditioning formula has probability zero")]
    ZeroProbabilityCondition,
    #[error("decimal odds are undefined when both true and false mass are zero")]
    UndefinedOdds,
    #[error("unbound schema variable `{0}`")]
    UnboundVariable(String),
    #[error("invalid valuation: {0}")]
    InvalidValuation(String),
    #[error("invalid credence: {0}")]
    InvalidCredence(String),
    #[error("operation requires a bivalent credence")]
    NotBivalent,
    #[error("depth bound {bound} is outside the supported range 1..={max}")]
    BoundTooLarge { bound: usize, max: usize },
    #[error("invalid sequent: {0}")]
    InvalidSequent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
