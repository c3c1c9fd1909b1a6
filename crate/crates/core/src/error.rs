use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TropError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("assumption violated: {0}")]
    AssumptionViolated(String),
    #[error("positive cycle makes the least solution diverge")]
    PositiveCycleDiverges,
    #[error("least solution violates the constant-side subsystem at row {0}")]
    SecondSubsystemViolated(usize),
    #[error("invalid strategy: {0}")]
    InvalidStrategy(String),
    #[error("strategy space too large for enumeration ({0} pairs)")]
    TooLarge(u128),
    #[error("grid of {0} points exceeds the cap of {1}")]
    GridTooLarge(u128, u128),
    #[error("witness failed verification: {0}")]
    InternalCertificateMismatch(String),
    #[error("certificate synthesis failed: {0}")]
    CertificateSynthesisFailed(String),
    #[error("iteration cap {0} exceeded")]
    IterationCapExceeded(u128),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, TropError>;
