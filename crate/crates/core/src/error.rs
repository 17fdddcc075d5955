use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("edge ({0}, {1}) is not written with its smaller endpoint first")]
    UnorderedEdge(usize, usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("graph has interval chromatic number {0}, expected 2")]
    NotTwoIchromatic(usize),
    #[error("interval 2-coloring is not unique (valid splits {0:?}); pass an explicit split")]
    AmbiguousSplit(Vec<usize>),
    #[error("split at {0} does not give two independent intervals")]
    InvalidSplit(usize),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("invalid block grid: {0}")]
    InvalidGrid(String),
    #[error("invalid edge coloring: {0}")]
    InvalidColoring(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("node budget of {0} exhausted before the search closed")]
    BudgetExceeded(u64),
    #[error("step budget of {0} exhausted before the derivation search closed")]
    StepBudgetExceeded(usize),
}

impl Error {
    /// Capacity and budget failures are inconclusive rather than wrong input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::Capacity(_) | Error::BudgetExceeded(_) | Error::StepBudgetExceeded(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
