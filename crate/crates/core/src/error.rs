use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("token set is not independent: {0} and {1} are adjacent")]
    NotIndependent(usize, usize),
    #[error("pair does not belong to this decomposition")]
    InvalidPair,
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph is not a block graph: block {0} is not a clique")]
    NotABlockGraph(usize),
    #[error("precondition violated: {0}")]
    PreconditionViolated(&'static str),
    #[error("invalid generator parameters: {0}")]
    InvalidParams(&'static str),
    #[error("state space was truncated by the oracle limits")]
    TruncatedSpace,
}
