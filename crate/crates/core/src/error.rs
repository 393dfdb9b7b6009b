use thiserror::Error;

/// Errors raised by the exact and numeric pipelines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("exact division left a nonzero remainder")]
    NonZeroRemainder,
    #[error("division by zero")]
    DivisionByZero,
    #[error("degenerate interval: lower bound must be strictly below upper bound")]
    DegenerateInterval,
    #[error("enumeration is bounded to n <= {max} vertices, got n = {n}")]
    EnumerationBound { n: usize, max: usize },
    #[error("precision exhausted: runs at {bits} and {doubled} bits disagree at index {index}")]
    PrecisionExhausted { index: usize, bits: usize, doubled: usize },
    #[error("numeric mode is undefined at nu = 1 (use symbolic mode)")]
    NumericModeAtNuOne,
    #[error("characteristic factorization mismatch: Q1*Q2 differs from the cleared numerator")]
    FactorizationMismatch,
    #[error("expected exactly one root of Q2 in (0, bound], found {count}")]
    NoRootInRange { count: usize },
    #[error("Newton polygon has no admissible slope")]
    DegenerateBranch,
    #[error("Puiseux expansion failed its substitution check at order {order}")]
    ResidualCheck { order: usize },
    #[error("finite-difference estimates at steps h and h/2 disagree by {discrepancy:e}")]
    StepTooLarge { discrepancy: f64 },
    #[error("sequence entry {index} is not strictly positive")]
    NonPositiveSequence { index: usize },
    #[error("(nu, c) = ({nu}, {c}) lies outside the validated region |c - 1| <= {radius}")]
    OutsideValidatedRegion { nu: String, c: String, radius: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// The variant name, for machine-readable error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonZeroRemainder => "NonZeroRemainder",
            Error::DivisionByZero => "DivisionByZero",
            Error::DegenerateInterval => "DegenerateInterval",
            Error::EnumerationBound { .. } => "EnumerationBound",
            Error::PrecisionExhausted { .. } => "PrecisionExhausted",
            Error::NumericModeAtNuOne => "NumericModeAtNuOne",
            Error::FactorizationMismatch => "FactorizationMismatch",
            Error::NoRootInRange { .. } => "NoRootInRange",
            Error::DegenerateBranch => "DegenerateBranch",
            Error::ResidualCheck { .. } => "ResidualCheck",
            Error::StepTooLarge { .. } => "StepTooLarge",
            Error::NonPositiveSequence { .. } => "NonPositiveSequence",
            Error::OutsideValidatedRegion { .. } => "OutsideValidatedRegion",
            Error::InvalidParameter(_) => "InvalidParameter",
        }
    }
}
