use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} of size {size} exceeds the cap {cap}")]
    CapExceeded { what: &'static str, size: u128, cap: u128 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("{0} is not a power of {1}")]
    NotAPower(u64, u64),
    #[error("characteristic polynomial is reducible")]
    Reducible,
    #[error("character evaluated at zero")]
    ZeroArgument,
    #[error("subgroup order {0} does not divide {1}")]
    BadSubgroupOrder(u64, u64),
    #[error("eta value is not well defined: {0}")]
    EtaPrecondition(String),
    #[error("root of unity {0} does not fit conductor {1}")]
    Conductor(String, u64),
    #[error("{d} does not divide {n}")]
    NotDivisor { d: u32, n: u32 },
    #[error("ramified quadratic extension needs odd q, got {0}")]
    RamifiedEvenQ(u64),
    #[error("Hasse numerator {r} is not coprime to {d}")]
    HasseNotCoprime { r: u32, d: u32 },
    #[error("invalid setup: {0}")]
    InvalidSetup(String),
    #[error("character is not regular: orbit {orbit:?} has length {} < {n}", orbit.len())]
    NotRegular { orbit: Vec<u64>, n: u32 },
    #[error("operation not defined for case {0}")]
    WrongCase(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("exponent {0} is not elliptic regular")]
    NonElliptic(u64),
    #[error("no Green match: {0}")]
    NoMatch(String),
    #[error("multiplicity is not a nonnegative integer: {0}")]
    NonInteger(String),
    #[error("inconsistent scalar twist: {0}")]
    InconsistentScalar(String),
    #[error("search failed: {0}")]
    SearchFailure(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("cache: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable machine-readable code, used by the command line front end.
    pub fn reason(&self) -> &'static str {
        match self {
            Error::CapExceeded { .. } => "CAP_EXCEEDED",
            Error::NotPrime(_) => "NOT_PRIME",
            Error::NotPrimePower(_) => "NOT_PRIME_POWER",
            Error::ZeroInverse => "ZERO_INVERSE",
            Error::NotAPower(..) => "NOT_A_POWER",
            Error::Reducible => "REDUCIBLE",
            Error::ZeroArgument => "ZERO_ARGUMENT",
            Error::BadSubgroupOrder(..) => "BAD_SUBGROUP_ORDER",
            Error::EtaPrecondition(_) => "ETA_PRECONDITION",
            Error::Conductor(..) => "CONDUCTOR",
            Error::NotDivisor { .. } => "NOT_DIVISOR",
            Error::RamifiedEvenQ(_) => "RAMIFIED_EVEN_Q",
            Error::HasseNotCoprime { .. } => "HASSE_NOT_COPRIME",
            Error::InvalidSetup(_) => "INVALID_SETUP",
            Error::NotRegular { .. } => "NOT_REGULAR",
            Error::WrongCase(_) => "WRONG_CASE",
            Error::DimensionMismatch { .. } => "DIMENSION_MISMATCH",
            Error::NonElliptic(_) => "NON_ELLIPTIC",
            Error::NoMatch(_) => "NO_MATCH",
            Error::NonInteger(_) => "NON_INTEGER",
            Error::InconsistentScalar(_) => "INCONSISTENT_SCALAR",
            Error::SearchFailure(_) => "SEARCH_FAILURE",
            Error::Unsupported(_) => "UNSUPPORTED",
            Error::Cache(_) => "CACHE",
            Error::Io(_) => "IO",
        }
    }
}
