use thiserror::Error;

/// Errors raised anywhere in the engine.
///
/// The mathematical failures (`NotDivisible`, `NotRational`, `DescentFailure`)
/// never occur on valid input; when they do they indicate a modelling bug and
/// the computation is aborted rather than rounded.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field of size {q}^{degree} exceeds the element bound {bound}")]
    DegreeBoundExceeded { q: u64, degree: usize, bound: u64 },
    #[error("level {sub} is not a subfield of level {level}")]
    NotSubfield { sub: usize, level: usize },
    #[error("zero element where a unit is required")]
    ZeroElement,
    #[error("level {0} is not tabulated in this tower")]
    LevelTooLarge(usize),
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u64, u64),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("level or size mismatch: {0}")]
    LevelMismatch(String),
    #[error("class descent failed: {0}")]
    DescentFailure(String),
    #[error("class data is not stable under the Galois involution")]
    NotSigmaStable,
    #[error("conjugate factors carry different partitions")]
    PartitionMismatch,
    #[error("subspace is not invariant under the matrix")]
    NotInvariant,
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("value is not a rational integer: {0}")]
    NotRational(String),
    #[error("{value} is not divisible by {divisor}")]
    NotDivisible { value: String, divisor: i128 },
    #[error("character exponent {exponent} at level {level} is not regular")]
    NotRegular { exponent: u64, level: usize },
    #[error("specs cannot be compared: {0}")]
    IncomparableSpecs(String),
    #[error("parity violation: m = {m}, m_E = {m_e}")]
    ParityViolation { m: i128, m_e: i128 },
    #[error("predictor mismatch: {0}")]
    PredictorMismatch(String),
    #[error("character identity violated at {0}")]
    IdentityViolation(String),
    #[error("pattern violation: {0}")]
    PatternViolation(String),
    #[error("prime {0} is unsuitable for the modular character table computation")]
    BadPrime(u64),
    #[error("cuspidal identification ambiguous: {0}")]
    IdentificationAmbiguous(String),
    #[error("cuspidal character formula has not been validated against the oracle")]
    GreenNotValidated,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
