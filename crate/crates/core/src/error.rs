use thiserror::Error;

use crate::linalg::LinalgError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("vertex {0} is not declared")]
    UnknownVertex(usize),
    #[error("arrow `{0}` declared twice")]
    DuplicateArrow(String),
    #[error("arrows do not compose: {0}")]
    NonComposable(String),
    #[error("relation terms are not parallel paths")]
    NonParallelRelation,
    #[error("relation term of length {0}; relations must lie in the square of the arrow ideal")]
    RelationTooShort(usize),
    #[error("relation is zero after collecting terms")]
    EmptyRelation,
    #[error("empty path")]
    EmptyPath,
    #[error("ideal is not admissible within path length {0}")]
    NotAdmissible(usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoryError {
    #[error("projective dimension undetermined at cutoff {0}")]
    UndeterminedPd(usize),
    #[error("simple S({0}) in V does not have finite projective dimension")]
    VNotInFiniteProjDim(usize),
    #[error("hypothesis failed: layer length of the regular module is {0}, need at most 2")]
    HypothesisFailed(usize),
    #[error("search space too large: {size} candidate simples exceed the cap {cap}")]
    SearchSpaceTooLarge { size: usize, cap: usize },
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
}
