use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("grade {grade} exceeds ambient dimension {dim}")]
    GradeTooLarge { grade: usize, dim: usize },

    #[error("operation requires a form of positive grade")]
    GradeZero,

    #[error("expected {expected} vectors, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("ambient dimension {0} outside the supported range 1..=9")]
    UnsupportedDimension(usize),

    #[error("invalid multi-index {0:?}")]
    InvalidIndex(Vec<usize>),

    #[error("catalog mismatch in {component} at {index}: contraction gives {computed}, table gives {expected}")]
    CatalogMismatch {
        component: String,
        index: String,
        computed: String,
        expected: String,
    },

    #[error("self-dual triple fails Ω_{j} ∧ Ω_{k} = {expected}·vol")]
    TripleRelation { j: usize, k: usize, expected: i64 },

    #[error("vectors are linearly dependent")]
    DependentVectors,

    #[error("subalgebra is not contained in so({0})")]
    NotInSo(usize),

    #[error("variable {0} is not part of the system")]
    UnknownVariable(String),

    #[error("invalid W-chain file: {0}")]
    ChainFormat(String),
}

pub type Result<T> = std::result::Result<T, Error>;
