pub mod diagnostics;
pub mod error;
pub mod hyper;
pub mod integral;
pub mod numeric;
pub mod recurrence;
pub mod suite;
pub mod zeta;

pub use error::{Error, Result};
