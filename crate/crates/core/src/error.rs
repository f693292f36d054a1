use thiserror::Error;

/// Errors raised by field construction, form handling, enumeration and the
/// closed-form cross-checks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("characteristic 2 is not supported")]
    EvenCharacteristic,
    #[error("modulus {0:?} is reducible over F_{1}")]
    ReducibleModulus(Vec<u32>, u32),
    #[error("malformed modulus: {0}")]
    BadModulus(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("evaluation table is not a quadratic form: {0}")]
    NotQuadratic(String),
    #[error("no subspace of the requested shape exists: {0}")]
    RankTooSmall(String),
    #[error("residue {0} is not a unit mod {1}")]
    BadResidue(u32, u32),
    #[error("closed form disagrees with direct evaluation: {0}")]
    OracleMismatch(String),
    #[error("bad dimensions: {0}")]
    BadDims(String),
    #[error("enumeration of {size} items exceeds the limit {limit}")]
    TooLarge { size: u128, limit: u128 },
    #[error("table entry is not an integer: {0}")]
    NonIntegerWeight(String),
    #[error("weight distribution has no nonzero weight")]
    EmptyCode,
    #[error("code dimension {dim} is smaller than s = {s}")]
    DimensionDeficient { dim: usize, s: usize },
    #[error("no closed-form weight hierarchy applies (R = 0)")]
    NoApplicableTheorem,
    #[error("subspace is not contained in the image of L_f: {0}")]
    BadSubspace(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("I/O error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
