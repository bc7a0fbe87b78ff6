//! Magneto-electric response tensors `chi^EB_ij(omega)` of two-body bound
//! states in static electric and magnetic bias fields.
//!
//! Two systems are covered: a charged pair in a harmonic trap, where the
//! response has a closed form ([`ho`]), and hydrogen, where it is a truncated
//! sum over bound states ([`hydrogen`]). The [`oracle`] module holds slow
//! independent evaluations used to check both, and [`cli`] drives sweeps and
//! reports.

pub mod cli;
pub mod error;
pub mod ho;
pub mod hydrogen;
pub mod oracle;
pub mod quadrature;
pub mod tensor;
pub mod units;

pub use error::{Error, Result};
