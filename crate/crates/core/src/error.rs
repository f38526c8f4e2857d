use thiserror::Error;

use crate::VertexId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("instance is infeasible (violated cut {witness:?})")]
    Infeasible { witness: Vec<VertexId> },

    #[error("digraph has no r-out {k}-arborescence")]
    NoKArborescence { k: usize },

    #[error("no common independent set of size {target} (maximum is {reached})")]
    CardinalityUnreachable { target: usize, reached: usize },

    #[error("arc set cannot be split into {k} arc-disjoint arborescences")]
    NotDecomposable { k: usize },

    #[error("refusing exhaustive search: {0}")]
    RefusedScale(String),

    #[error("instance generation failed after {attempts} attempts")]
    GenerationFailed { attempts: usize },

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("internal solver error: {0}")]
    SolverBug(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
