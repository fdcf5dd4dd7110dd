use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("self-loop on node {node}")]
    SelfLoop { node: usize },

    #[error("node {node} out of range for a graph with {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An exhaustive step was refused because its input is larger than the
    /// configured cap.
    #[error("{what} has size {size}, above the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("search budget exhausted after {explored} nodes")]
    BudgetExceeded { explored: u64 },

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    /// A structural property that the algorithms rely on did not hold.
    #[error("invariant violated: {0}")]
    InvariantViolated(String),
}

impl Error {
    /// True for refusals caused by size caps or budgets rather than bad input.
    pub fn is_refusal(&self) -> bool {
        matches!(self, Error::CapExceeded { .. } | Error::BudgetExceeded { .. })
    }
}
