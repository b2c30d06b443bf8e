use crate::digraph::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },

    #[error("invalid digraph: {0}")]
    InvalidDigraph(String),

    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),

    #[error("coefficient mode mismatch: {left} vs {right}")]
    ModeMismatch {
        left: &'static str,
        right: &'static str,
    },

    #[error("order {order} exceeds the limit of {limit} for {what}")]
    TooLarge {
        what: &'static str,
        order: usize,
        limit: usize,
    },

    #[error("expected exactly one cut-vertex, found {0}")]
    CutVertexCount(usize),

    #[error("{0} is not a cut-vertex")]
    NotACutVertex(VertexId),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not a simple graph: {0}")]
    NotSimple(String),

    #[error("not a block graph: block {0:?} is not complete")]
    NotBlockGraph(Vec<VertexId>),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("entry at row {row}, column {col} is not an integer")]
    NonInteger { row: usize, col: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
