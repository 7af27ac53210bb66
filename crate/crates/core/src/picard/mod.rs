//! Picard-Fuchs equations, their coefficient recurrences and the
//! hypergeometric cross-check.

pub mod ode;
pub mod oracle;
pub mod recurrence;

pub use ode::{derive_ode, derive_ode_for, SecondOrderOde};
pub use oracle::hypergeometric_oracle;
pub use recurrence::{recurrence_at_infinity, recurrence_at_zero, HolonomicRecurrence};
