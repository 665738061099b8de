use thiserror::Error;

/// Errors shared by every module in this crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Query or contraction referenced a vertex that was already merged away.
    #[error("stale vertex id {0}: vertex was already contracted")]
    StaleVertex(usize),

    /// Query referenced an id that never existed in the (tri)graph.
    #[error("unknown vertex id {0}")]
    UnknownVertex(usize),

    #[error("invalid contraction of {u} and {v}: {reason}")]
    InvalidContraction { u: usize, v: usize, reason: String },

    #[error("malformed sequence at step {step}: {reason}")]
    MalformedSequence { step: usize, reason: String },

    #[error("step index {index} out of range, sequence has {len} steps")]
    StepOutOfRange { index: usize, len: usize },

    /// Operation requires a full sequence (n-1 steps) but got a prefix.
    #[error("sequence is partial ({steps} of {required} steps): {op} needs a full sequence")]
    PartialSequence {
        op: &'static str,
        steps: usize,
        required: usize,
    },

    #[error("{op}: instance size {size} exceeds cap {cap}")]
    SizeCapExceeded {
        op: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("state budget of {budget} table entries exceeded")]
    StateBudgetExceeded { budget: usize },

    /// Input violates a documented precondition of the operation.
    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("{file}:{line}: {msg}")]
    Parse {
        file: String,
        line: usize,
        msg: String,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
