use thiserror::Error;

use crate::graph::{EdgeId, VertexId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by graph construction, parsing and the topological checks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("malformed rotation at vertex {vertex}: {reason}")]
    Rotation { vertex: VertexId, reason: String },
    #[error("graph is not planar")]
    Nonplanar,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("enumeration cap exceeded: {edges} edges, cap {cap}")]
    CapExceeded { edges: usize, cap: usize },
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors caused by malformed or inconsistent input, as opposed
    /// to inputs that are well formed but fail a mathematical hypothesis.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. }
                | Error::UnknownVertex(_)
                | Error::UnknownEdge(_)
                | Error::Invalid(_)
                | Error::Rotation { .. }
                | Error::Nonplanar
        )
    }
}
