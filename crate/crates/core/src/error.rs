use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size {requested} exceeds the enumeration cap {cap}")]
    CapExceeded { requested: u64, cap: u64 },

    #[error("weight mismatch: {left} vs {right}")]
    WeightMismatch { left: u64, right: u64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error at position {position} in {input:?}: {message}")]
    Parse {
        input: String,
        position: usize,
        message: String,
    },

    #[error("partition ({0}) is not a member of X_n")]
    NotInXn(String),

    /// The replacement rules produced something that is not a bipartition.
    /// Seeing this means the map is broken, not that the input was bad.
    #[error("invariant violation for ({partition}): {detail}")]
    InvariantViolation { partition: String, detail: String },

    #[error("two preimages of t={t}, {bipartition}: ({first}) and ({second})")]
    Ambiguous {
        bipartition: String,
        t: i64,
        first: String,
        second: String,
    },

    #[error("no preimage of t={t}, {bipartition} in X_{n}")]
    NotFound { bipartition: String, t: i64, n: u64 },

    #[error("antisymmetry violated by distinct elements {a} and {b}")]
    Antisymmetry { a: String, b: String },
}
