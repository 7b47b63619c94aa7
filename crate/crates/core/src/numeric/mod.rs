//! Exact and error-tracked arithmetic substrate.
//!
//! Exact quantities (sequence terms, partial-fraction coefficients, rational
//! parameters) live in [`ExactRational`]; numeric quantities live in
//! [`BigReal`] / [`BigComplex`], which carry an absolute error bound that is
//! propagated forward through every operation.

mod complex;
mod mag;
mod poly;
mod rational;
mod real;
mod series;

pub use complex::BigComplex;
pub use mag::Mag;
pub use poly::{poly_eval, PolyQ};
pub use rational::{format_rational, parse_rational, rat, ExactRational};
pub use real::BigReal;
pub use series::{series_div, series_mul, Series};

use thiserror::Error;

/// Working precision used when a caller does not ask for anything specific.
pub const DEFAULT_PRECISION_BITS: u32 = 128;

/// Guard bits added on top of a requested output precision.
pub const GUARD_BITS: u32 = 32;

/// Precision (in bits) needed to resolve an absolute tolerance `eps`,
/// including guard bits; never below [`DEFAULT_PRECISION_BITS`].
pub fn precision_for_tolerance(eps: f64) -> u32 {
    let needed = if eps > 0.0 && eps.is_finite() {
        (-eps.log2()).ceil().max(0.0) as u32
    } else {
        0
    };
    (needed + GUARD_BITS).max(DEFAULT_PRECISION_BITS)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumericError {
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
    #[error("series division by a series with vanishing leading term")]
    ZeroConstantTerm,
    #[error("division by an interval that contains zero")]
    UncertainZero,
    #[error("square root of a value that may be negative")]
    NegativeSqrt,
}
