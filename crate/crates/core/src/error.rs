use thiserror::Error;

use crate::projspace::Subspace;

/// Errors raised anywhere in the workbench.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotAPrimePower(u32),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("subspaces live in different ambient spaces")]
    AmbientMismatch,
    #[error("bilinear form is degenerate")]
    DegenerateForm,
    #[error("subspace is not contained in the given subspace")]
    NotContained,
    #[error("point is not incident with the given plane")]
    NotIncident,
    #[error("parameter mismatch: {0}")]
    ParamMismatch(String),
    #[error("invalid design parameters: {0}")]
    InvalidParams(String),
    #[error("{k} does not divide {v}")]
    NotDivisible { v: usize, k: usize },
    #[error("not a partial spread: point {point} is covered twice")]
    NotPartialSpread { point: usize },
    #[error("block set is not a spread")]
    NotASpread,
    #[error("derived design at the point is not a spread")]
    DerivedNotASpread,
    #[error("solid contains {count} blocks")]
    NotSteinerLike { solid: Box<Subspace>, count: usize },
    #[error("unknown id {0}")]
    UnknownId(usize),
    #[error("structure carries no geometric labels")]
    MissingLabels,
    #[error("point set is not an ovoid")]
    NotAnOvoid,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
