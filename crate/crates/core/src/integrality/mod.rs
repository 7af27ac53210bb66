//! Denominator bounds, p-adic reductions and integral level.

pub mod bounds;
pub mod checks;
pub mod empirical;
pub mod fourth;
pub mod level;
pub mod reduce;

pub use bounds::{genint_bound, strongint_bound, theoretical_bound, BoundKind};
pub use checks::{fourth_power_witness, infinity_bound, syntactic_checks, SyntacticFlags};
pub use empirical::{empirical_level, EmpiricalLevel};
pub use fourth::{fourth_power_test, FourthPowerMode, FourthPowerVerdict};
pub use level::{analyze_level, IntegralityCertificate, LevelVerdict};
pub use reduce::{sharperub_reduce, sharperub_reduce_with, verify_reduction, ReductionCertificate};
