use thiserror::Error;

use crate::graph::Violation;
use crate::perm::PermError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("edge index {index} out of range ({count} edges)")]
    UnknownEdge { index: usize, count: usize },
    #[error("invalid graph: {}", join_violations(.0))]
    InvalidGraph(Vec<Violation>),
    #[error("invalid assignment: {0}")]
    InvalidAssignment(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("resource cap exceeded: {what} (cap {cap})")]
    Resource { what: &'static str, cap: u64 },
    #[error("law violated: {0}")]
    LawViolation(String),
    #[error("invalid instance: {0}")]
    Instance(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// Process exit code: 2 for exhausted resource caps, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Resource { .. } => 2,
            _ => 1,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
