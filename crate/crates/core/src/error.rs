use thiserror::Error;

/// Errors raised by the algebraic constructions and checks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live over different Lie algebra contexts")]
    ContextMismatch,

    #[error("variable {0} has no assigned value")]
    MissingAssignment(String),

    #[error("undefined input: {0}")]
    UndefinedInput(&'static str),

    #[error("unsupported rank n = {0} (need n >= 2)")]
    UnsupportedRank(usize),

    #[error("Lie algebra axiom violated: {0}")]
    AxiomViolation(String),

    #[error("polynomial contains a variable of depth {depth}, expected depth 1")]
    WrongRing { depth: u32 },

    #[error("input is not invariant: {0}")]
    InvarianceViolation(String),

    #[error("functional is not regular: stabilizer dimension {stabilizer} != index {index}")]
    Regularity { stabilizer: usize, index: usize },

    #[error("generators {0} and {1} do not commute")]
    Commutativity(String, String),

    #[error("matrix of size {size} exceeds the column determinant limit {limit}")]
    SizeLimit { size: usize, limit: usize },

    #[error("not a subalgebra: {0}")]
    NotClosed(String),

    #[error("expected {expected} values, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
