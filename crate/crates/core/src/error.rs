use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlabError {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("group order {order} exceeds the order cap {cap}")]
    OrderCap { order: u64, cap: u64 },

    #[error("group of order {order} exceeds the element cap {cap}")]
    ElementCap { order: u64, cap: u64 },

    #[error("semidirect product of order {order} exceeds the oracle cap {cap}")]
    OracleCap { order: u64, cap: u64 },

    #[error("subgroup enumeration budget of {budget} subgroups exhausted")]
    LatticeBudget { budget: usize },

    #[error("not a homomorphism into Aut(N): {0}")]
    BadAction(String),

    #[error("subgroup is not normal in the ambient group")]
    NotNormal,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("local definition unavailable for {0}")]
    LocalDefinitionUnavailable(String),

    #[error("group {0} is not soluble")]
    NotSoluble(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("{0}")]
    Usage(String),
}

pub type Result<T, E = FlabError> = std::result::Result<T, E>;
