use thiserror::Error;

/// Errors raised while constructing or evaluating codes and channels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("qubit count {0} is outside 1..=16")]
    QubitCount(usize),

    #[error("qubit index {index} is outside 1..={n}")]
    QubitIndex { index: usize, n: usize },

    #[error("qubit {0} is specified more than once")]
    DuplicateQubit(usize),

    #[error("bit pattern has bits set above qubit {0}")]
    StrayBits(usize),

    #[error("cannot parse Pauli string {text:?}: {reason}")]
    ParsePauli { text: String, reason: String },

    #[error("cannot parse syndrome {0:?}")]
    ParseSyndrome(String),

    #[error("length mismatch: expected {expected} qubits, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("generators {0} and {1} do not commute")]
    NonCommutingGenerators(String, String),

    #[error("stabilizer generators are linearly dependent")]
    DependentGenerators,

    #[error("correctable set has {found} elements, expected {expected}")]
    CorrectableSetSize { expected: usize, found: usize },

    #[error("correctable set does not contain the identity")]
    MissingIdentity,

    #[error("correctable elements {first} and {second} share syndrome {syndrome}")]
    SyndromeCollision {
        first: String,
        second: String,
        syndrome: String,
    },

    #[error("invalid channel parameters: {0}")]
    InvalidParams(String),

    #[error(
        "exhaustive enumeration over {n} qubits exceeds the limit of {max}; \
         larger codes need a Monte Carlo estimator, which this crate does not provide"
    )]
    EnumerationTooLarge { n: usize, max: usize },

    #[error("no closed form is available for {code} in the {regime} regime")]
    NoClosedForm { code: String, regime: String },

    #[error("unknown code name {0:?}")]
    UnknownCode(String),
}

pub type Result<T> = std::result::Result<T, Error>;
