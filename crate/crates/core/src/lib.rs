//! Picard-Fuchs equations of Weierstrass families, the holonomic recurrences
//! of their period expansions, and the arithmetic and asymptotics of those
//! sequences.

pub mod algebra;
pub mod asymptotics;
pub mod curve;
pub mod error;
pub mod integrality;
pub mod modular;
pub mod picard;
pub mod search;

pub use error::{Error, Result};
