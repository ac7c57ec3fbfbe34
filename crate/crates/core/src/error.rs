use thiserror::Error;

/// Errors raised by the library. Every fallible operation returns [`Result`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("vertex index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("malformed face: {0}")]
    MalformedFace(String),

    #[error("degree {0:?} has the wrong length or is not in the semigroup")]
    NotInSemigroup(Vec<u64>),

    #[error("enumeration cap exceeded: {0}")]
    CapExceeded(String),

    #[error("face list is not downward closed: {0}")]
    NotDownwardClosed(String),

    #[error("{0} is not a vertex of the complex")]
    NotAVertex(usize),

    #[error("malformed vector field: {0}")]
    MalformedField(String),

    #[error("pairing conflict: face {0} is covered twice")]
    PairingConflict(String),

    #[error("hypotheses violated: {0}")]
    HypothesisViolated(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("internal invariant broken: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
