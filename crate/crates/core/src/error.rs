use thiserror::Error;

/// Errors raised by the group, solubility and graph layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("element is not a member of the group")]
    NotAMember,

    #[error("{what} budget exceeded (limit {limit})")]
    BudgetExceeded { what: &'static str, limit: u64 },

    #[error("subgroup is not normal in the group")]
    NotNormal,

    #[error("spec syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("unsupported construction: {0}")]
    Unsupported(String),

    #[error("generator file error: {0}")]
    GeneratorFile(String),

    #[error("element lies in the soluble radical and is not a vertex")]
    NotAVertex,

    #[error("group is soluble; its solubility graph has no vertices")]
    SolubleGroup,

    #[error("operation requires the full-graph tier ({vertices} vertices exceeds threshold {threshold})")]
    TierViolation { vertices: u64, threshold: u64 },

    #[error("edge formula produced a non-integral or odd value: {0}")]
    EdgeFormula(String),

    #[error("unknown claim id `{0}`")]
    UnknownClaim(String),

    #[error("{0}")]
    Other(String),
}

impl Error {
    /// True for errors caused by a malformed group spec or generator file.
    pub fn is_spec_error(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. }
                | Error::Unsupported(_)
                | Error::GeneratorFile(_)
                | Error::InvalidPermutation(_)
        )
    }

    /// True for budget and tier violations.
    pub fn is_budget_error(&self) -> bool {
        matches!(
            self,
            Error::BudgetExceeded { .. } | Error::TierViolation { .. } | Error::SolubleGroup
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
