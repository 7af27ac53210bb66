use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("insufficient degree shift: {shift} < degree {degree}")]
    InsufficientDegreeShift { shift: usize, degree: usize },
    #[error("pole at expansion point")]
    PoleAtExpansionPoint,
    #[error("non-unit constant term")]
    NonUnitConstantTerm,
    #[error("not a reversible series")]
    NotReversible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("identically singular family")]
    IdenticallySingular,
    #[error("coordinate {0} has pole at origin")]
    PoleAtOrigin(String),
    #[error("degenerate system: constant j")]
    ConstantJ,
    #[error("recurrence has apparent singularity at origin")]
    ApparentSingularity,
    #[error("vanishing leading weight at n = {0}")]
    VanishingLeadingWeight(i64),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("shift required: discriminant does not vanish at t = 0 (integer roots of its numerator: {0})")]
    ShiftRequired(String),
    #[error("reduction hypotheses not met: {0}")]
    ReductionHypotheses(String),
    #[error("non-integral q-exponent")]
    NonIntegralQExponent,
    #[error("insufficient precision: need order {required}")]
    InsufficientPrecision { required: i64 },
    #[error("no positive root")]
    NoPositiveRoot,
    #[error("recurrence is not of Poincare type: weight {0} has degree above the leading weight")]
    NotPoincare(usize),
    #[error("checkpoint: {0}")]
    Checkpoint(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
