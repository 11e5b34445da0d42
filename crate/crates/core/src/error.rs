use std::path::PathBuf;

use thiserror::Error;

use crate::graph::NodeId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: malformed production: {reason}")]
    MalformedProduction { line: usize, reason: String },

    #[error("grammar has no production for start symbol `{0}`")]
    MissingStartSymbol(String),

    #[error("grammar has a cycle of unit productions through `{0}`")]
    UnitCycle(String),

    #[error("tag `{0}` is not a terminal of the grammar")]
    UnknownTag(String),

    #[error("parse forest holds more than {cap} trees")]
    TooManyTrees { cap: usize },

    #[error("cannot build a syntax graph from an empty forest")]
    EmptyForest,

    #[error("node {0} is not in the graph")]
    NodeNotFound(NodeId),

    #[error("more than {cap} syntactic paths reach node {node}")]
    PathLimitExceeded { node: NodeId, cap: usize },

    #[error("entries for {key} need different roles: `{first}` and `{second}`")]
    ConflictingRole {
        key: String,
        first: String,
        second: String,
    },

    #[error("schema violation: {0}")]
    SchemaViolation(String),

    #[error("malformed xml: {0}")]
    MalformedXml(String),

    #[error("line {line}: malformed lexicon entry")]
    MalformedLexicon { line: usize },

    #[error("no lexicon entry for `{0}` and no role attribute")]
    UnknownWord(String),

    #[error("sentence has no parse, even with one omitted element")]
    Unparseable,

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for errors caused by bad user input rather than internal limits.
    pub fn is_input_error(&self) -> bool {
        !matches!(
            self,
            Error::TooManyTrees { .. } | Error::PathLimitExceeded { .. } | Error::NodeNotFound(_)
        )
    }
}
