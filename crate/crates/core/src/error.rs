use thiserror::Error;

/// Errors produced by the toolkit.
///
/// `Internal` is reserved for breaches of facts that hold in every skew
/// lattice; seeing one means either a corrupted algebra slipped past
/// validation or a bug in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SklError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid table: {0}")]
    Table(String),

    #[error("carrier of {size} elements exceeds the limit of {max}")]
    CarrierTooLarge { size: usize, max: usize },

    #[error("partition is not a congruence: {witness:?}")]
    NotACongruence { witness: [String; 4] },

    #[error("invalid partition: {0}")]
    Partition(String),

    #[error("class mismatch: bijection targets class {target} but the next one starts at class {next}")]
    ClassMismatch { target: usize, next: usize },

    #[error("pair ({upper}, {lower}) is not strictly ordered")]
    NotStrictlyOrdered { upper: String, lower: String },

    #[error("unknown mode `{0}`")]
    UnknownMode(String),

    #[error("parameter out of bounds: {0}")]
    OutOfBounds(String),

    #[error("inconsistent primitive spec: {0}")]
    SpecInconsistent(String),

    #[error("not a skew lattice: {0}")]
    NotASkewLattice(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = SklError> = std::result::Result<T, E>;

impl SklError {
    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        SklError::Internal(msg.into())
    }

    pub fn is_internal(&self) -> bool {
        matches!(self, SklError::Internal(_))
    }
}
