use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6Parse { offset: usize, reason: String },

    #[error("edge-list parse error at line {line}: {reason}")]
    EdgeListParse { line: usize, reason: String },

    #[error("unsupported order {n}: internal enumeration is capped at {cap}; supply a graph6 stream instead")]
    UnsupportedOrder { n: usize, cap: usize },

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
