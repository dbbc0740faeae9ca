use thiserror::Error;

/// Errors raised by constructors and analyses in this crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ground set size {0} is outside 1..=64")]
    GroundSize(usize),
    #[error("subset {bits:#x} has elements outside the ground set of size {n}")]
    OutOfRange { bits: u64, n: usize },
    #[error("expected {lo} to be a subset of {hi}")]
    NotSubset { lo: String, hi: String },
    #[error("duplicate element {0}")]
    Duplicate(String),
    #[error("element {0} is not in the poset")]
    NotInPoset(String),
    #[error("elements {0} and {1} are not comparable")]
    Incomparable(String, String),
    #[error("poset is empty")]
    EmptyPoset,
    #[error("function class is empty")]
    EmptyClass,
    #[error("poset is not intersection-closed: {0}")]
    NotIntersectionClosed(String),
    #[error("face {0:?} is not in the complex")]
    FaceNotInComplex(Vec<usize>),
    #[error("vertex {vertex} out of range for complex on {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("{what} exceeds cap: {value} > {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid bit string {0:?}")]
    BitString(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("{0} is not a flat of the matroid")]
    NotFlat(String),
    #[error("malformed JSON: {0}")]
    Json(String),
}

impl Error {
    /// Cap violations get their own exit code in the CLI.
    pub fn is_cap(&self) -> bool {
        match self {
            Error::CapExceeded { .. } => true,
            Error::GroundSize(n) => *n > crate::subsets::GroundSpec::MAX,
            _ => false,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
