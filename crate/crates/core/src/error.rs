use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("loop forbidden: ({0}, {0})")]
    LoopForbidden(usize),
    #[error("multiarc forbidden: ({0}, {1}) given twice")]
    MultiarcForbidden(usize, usize),
    #[error("vertex {index} out of range for a digraph on {n} vertices")]
    VertexOutOfRange { index: usize, n: usize },
    #[error("digraph has no vertices")]
    EmptyDigraph,
    #[error("digraph is not strongly connected")]
    NotStronglyConnected,
    #[error("power iteration did not converge after {iterations} iterations (best estimate {best})")]
    NotConverged { best: f64, iterations: usize },
    #[error("normalization stalled after {rounds} rounds")]
    NormalizationStalled { rounds: usize },
    #[error("rewiring decreased the spectral radius from {before} to {after}")]
    RewireNotMonotone { before: f64, after: f64 },
    #[error("bracket condition violated: {0}")]
    BracketCondition(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("brute-force budget exceeded: {required} arc subsets, limit {limit}")]
    BudgetExceeded { required: u128, limit: u128 },
    #[error("digraph is not in clique block form: {0}")]
    NotBlockForm(String),
    #[error("cross-check failed: {what} ({left} vs {right})")]
    CrossCheck { what: &'static str, left: f64, right: f64 },
}
