use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("unknown variable `{name}` at byte {offset}")]
    UnknownVariable { name: String, offset: usize },

    #[error("zero denominator at byte {offset}")]
    ZeroDenominator { offset: usize },

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("variable index {index} out of range for {arity} variables")]
    IndexOutOfRange { index: usize, arity: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("ideal is not zero-dimensional (dimension {0})")]
    NotZeroDimensional(i64),

    #[error("not divisible: {0}")]
    NotDivisible(String),

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("step limit {limit} exhausted: {context}")]
    StepsExhausted { limit: usize, context: String },
}

impl Error {
    /// True for failures caused by a configured cap rather than by the input.
    pub fn is_resource_cap(&self) -> bool {
        matches!(self, Error::ResourceCap(_) | Error::StepsExhausted { .. })
    }
}
