use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid polygon count n = {0}: need n >= 5 and n != 6")]
    InvalidN(usize),
    #[error("invalid degree d = {0}: need d >= 2")]
    InvalidDegree(usize),
    #[error("invalid surface: {0}")]
    InvalidSurface(String),
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("separatrix length exceeded the cap {cap:.6} in direction ({dx:.6}, {dy:.6})")]
    BoundExceeded { cap: f64, dx: f64, dy: f64 },
    #[error("monodromy does not act transitively: orbit of sheet 0 has size {orbit} of {degree}")]
    IntransitiveMonodromy { orbit: usize, degree: usize },
    #[error("invalid monodromy: {0}")]
    InvalidMonodromy(String),
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("coset enumeration exceeded the cap of {0} cosets")]
    CapExceeded(usize),
    #[error("relator {0} does not evaluate to the identity")]
    BadRelator(String),
    #[error("not a chain: {0}")]
    NotAChain(String),
    #[error("verification failed for basis word {word}: {reason}")]
    VerificationFailed { word: String, reason: String },
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
