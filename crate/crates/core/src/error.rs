use thiserror::Error;

/// Errors produced by graph construction, problem validation and the
/// optimization pipeline.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown vertex label `{0}`")]
    UnknownVertex(String),

    #[error("vertex label must be a non-empty string")]
    EmptyLabel,

    #[error("self-loop on vertex `{0}`")]
    SelfLoop(String),

    #[error("separator set must not contain endpoint `{0}`")]
    SeparatorContainsEndpoint(String),

    #[error("graph contains a directed cycle")]
    Cyclic,

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("argument `{arg}` is not an A-Y separator")]
    NotSeparator { arg: String },

    #[error("set is not a minimal separator")]
    NotMinimalSeparator,

    #[error("no finite cut: no valid adjustment set exists")]
    NoFiniteCut,

    #[error("oracle cap exceeded: {actual} > {limit}")]
    OracleCapExceeded { limit: usize, actual: usize },

    #[error("random instance retry budget exhausted for seed {seed}")]
    RetryBudgetExhausted { seed: u64 },

    #[error("cost arithmetic overflow while scaling to integers")]
    CostOverflow,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
