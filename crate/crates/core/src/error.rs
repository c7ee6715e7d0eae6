use thiserror::Error;

/// Errors raised anywhere in the workbench.
///
/// The CLI maps these onto exit codes through [`Error::exit_code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("lattice is not contained in the claimed superlattice")]
    NotContained,

    #[error("permutation degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("group closure exceeded order cap {cap}")]
    OrderCapExceeded { cap: usize },

    #[error("subgroups belong to different parent groups")]
    ParentMismatch,

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("element {0} is not a product of commutators of the given subgroup")]
    NotInDerivedSubgroup(usize),

    #[error("collection exceeded its step budget of {0}")]
    CollectionBudget(u64),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("elements are conjugate and cannot be separated")]
    NotSeparated,

    #[error("unsupported group datum shape: {0}")]
    UnsupportedShape(String),

    #[error("ring elements live over different groups")]
    GroupMismatch,

    #[error("matrix is not idempotent at entry ({row}, {col})")]
    NotIdempotent { row: usize, col: usize },

    #[error("matrix shape error: {0}")]
    MatrixShape(String),

    #[error("valuation of the zero element is undefined")]
    ZeroValuation,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("certificate refers to data that cannot be resolved: {0}")]
    DanglingReference(String),

    #[error("claim could not be established: {0}")]
    ClaimFailed(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::InvalidPermutation(_) | Error::InvalidPresentation(_) => 2,
            Error::OrderCapExceeded { .. } | Error::CollectionBudget(_) => 3,
            _ => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
