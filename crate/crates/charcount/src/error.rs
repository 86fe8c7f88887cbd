use thiserror::Error;

/// Crate-wide error type.  Every failure mode that callers can meaningfully
/// react to gets its own variant; free-form context travels in the payload.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("polynomial division left a nonzero remainder: {0}")]
    NonzeroRemainder(String),

    #[error("polynomial factorization failed: {0}")]
    FactorizationFailed(String),

    #[error("root datum has a disconnected centre: {0}")]
    DisconnectedCentre(String),

    #[error("invalid root datum: {0}")]
    InvalidDatum(String),

    #[error("Weyl group order exceeds the enumeration bound {bound}")]
    GroupTooLarge { bound: u64 },

    #[error("elements are not comparable in this poset")]
    NotComparable,

    #[error("subsystem is not a Levi subsystem: {0}")]
    NotLevi(String),

    #[error("subsystem is not an endoscopy subsystem: {0}")]
    NotEndoscopy(String),

    #[error("no data table available: {0}")]
    MissingData(String),

    #[error("parse error: {0}")]
    ParseError(String),

    #[error("data table failed a consistency check: {0}")]
    InvariantViolation(String),

    #[error("duplicate type record: {0}")]
    DuplicateType(String),

    #[error("the variety is empty for g = {g}, n = {n} (need 2g + n >= 3)")]
    EmptyVariety { g: u32, n: u32 },

    #[error("unsupported surface data: {0}")]
    Unsupported(String),

    #[error("computed value disagrees with the reference table: {0}")]
    GoldenMismatch(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
