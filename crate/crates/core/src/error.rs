use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not a prime in [2, 2^61)")]
    NotPrime(u64),
    #[error("inversion of zero")]
    InversionOfZero,
    #[error("value {value} is not a canonical residue modulo {modulus}")]
    NonCanonical { value: u64, modulus: u64 },
    #[error("target of length {have} is too short, need {need}")]
    TargetTooShort { need: usize, have: usize },
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("singular triangular diagonal")]
    SingularDiagonal,
    #[error("leading coefficient of the divisor is zero")]
    NonInvertibleLeading,
    #[error("degree constraint violated: {0}")]
    DegreeConstraint(String),
    #[error("region {region} not restored: first difference at index {index}")]
    RestorationViolation { region: usize, index: usize },
    #[error("guard violation: {0}")]
    GuardViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
