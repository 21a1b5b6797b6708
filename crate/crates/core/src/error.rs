use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a ring needs at least one modulus")]
    EmptyRing,

    #[error("modulus {0} is invalid: every modulus must be at least 2")]
    InvalidModulus(u64),

    #[error("ring cardinality overflows (moduli {0:?})")]
    CardinalityOverflow(Vec<u64>),

    #[error("element has {found} coordinates but the ring has {expected}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("residue {residue} is not reduced modulo {modulus}")]
    UnreducedResidue { residue: u64, modulus: u64 },

    #[error("element index {index} out of range for ring of cardinality {cardinality}")]
    IndexOutOfRange { index: usize, cardinality: usize },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what}: search cap {cap} exceeded")]
    CapExceeded { what: &'static str, cap: u64 },

    #[error("ring of cardinality {cardinality} is too large for exhaustive search (limit {limit})")]
    RingTooLarge { cardinality: usize, limit: usize },

    #[error("search deadline exceeded while working on length {level}; verified lower bound {lower_bound}")]
    DeadlineExceeded { level: usize, lower_bound: u64 },

    #[error("certificate rejected: {0}")]
    Certificate(String),

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
