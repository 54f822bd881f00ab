use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("variable lists differ: [{left}] vs [{right}]")]
    VariableMismatch { left: String, right: String },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("index restriction violated: {0}")]
    Restriction(String),

    #[error("family {0} requires a modulus")]
    MissingModulus(String),

    #[error("quotient is infinite-dimensional: germ is not finitely determined")]
    InfiniteQuotient,

    #[error("degenerate draw persisted after {attempts} attempts: {reason}")]
    Degenerate { attempts: usize, reason: String },

    #[error("critical locus is not isolated")]
    NonIsolated,

    #[error("genericity draws disagree: {0:?}")]
    Disagreement(Vec<usize>),

    #[error("linear system inconsistent at quasi-degree {degree}: {context}")]
    Inconsistent { degree: i64, context: String },

    #[error("not quasi-homogeneous: {0}")]
    NotQuasiHomogeneous(String),

    #[error("covering degree is not integral: {0}")]
    NonIntegralDegree(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parameter must be nonzero: {0}")]
    ZeroParameter(String),

    #[error("evaluation at a pole")]
    Pole,

    #[error("invalid equivalence witness: {0}")]
    Witness(String),

    #[error("curve is not smooth at this parameter point")]
    NonSmooth,

    #[error("numerator is identically zero")]
    ZeroNumerator,

    #[error("component is empty: {0}")]
    EmptyComponent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
