use thiserror::Error;

use crate::numeric::NumericError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("degenerate recurrence: leading coefficient vanishes at n = {index}")]
    DegenerateRecurrence { index: usize },
    #[error("precision exhausted: tolerance {requested:e} needs more than the configured {precision_bits} bits")]
    PrecisionExhausted { requested: f64, precision_bits: u32 },
    #[error("construction inconsistency: {0}")]
    ConstructionInconsistency(String),
    #[error("no convergence: {0}")]
    NonConvergence(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("quadrature budget exceeded: best value {value} with error {err:e}")]
    BudgetExceeded { value: f64, err: f64 },
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

pub type Result<T> = std::result::Result<T, Error>;
