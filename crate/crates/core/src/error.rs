use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument violated an operation's precondition.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// A configured size cap was exceeded.
    #[error("{what} exceeds the configured cap of {cap}")]
    ResourceLimit { what: String, cap: usize },

    /// A computation would need more memory than the configured budget.
    #[error("memory budget exceeded: need about {needed} bytes, budget is {budget} bytes")]
    MemoryBudget { needed: usize, budget: usize },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// An analytic or algebraic precondition on a power series failed.
    #[error("series precondition violated: {0}")]
    Series(String),

    #[error(
        "relation space is not homogeneous for the bracket weight; use the ungraded computation"
    )]
    NotHomogeneous,

    #[error("operation is only defined for the regular two-dimensional generator space")]
    UnsupportedGenerators,
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    pub(crate) fn series(msg: impl Into<String>) -> Self {
        Error::Series(msg.into())
    }
}
