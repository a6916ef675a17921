use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("algebra must have a nonempty universe")]
    EmptyUniverse,
    #[error("duplicate operation symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("operation `{symbol}`: table has length {got}, expected length {expected}")]
    TableLength {
        symbol: String,
        expected: usize,
        got: usize,
    },
    #[error("operation `{symbol}`: entry {value} at index {index} is outside the universe 0..{size}")]
    EntryOutOfRange {
        symbol: String,
        index: usize,
        value: usize,
        size: usize,
    },
    #[error("unknown operation symbol `{0}`")]
    UnknownSymbol(String),
    #[error("assignment of length {got} is too short for a term of arity {needed}")]
    AssignmentTooShort { needed: usize, got: usize },
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("element {element} is outside the universe 0..{size}")]
    ElementOutOfRange { element: usize, size: usize },
    #[error("memory budget exceeded: needs about {required_mb} MiB, budget is {budget_mb} MiB (set MALT_BUDGET_MB to raise it)")]
    BudgetExceeded { required_mb: usize, budget_mb: usize },
    #[error("clone generation stopped at the cap of {cap} members; the result is partial and level search refuses minimality claims on it")]
    PartialClone { cap: usize },
    #[error("operation table is not a member of the clone")]
    NotInClone,
    #[error("empty term sequence")]
    EmptySequence,
    #[error("invalid input sequence: {0}")]
    InvalidSequence(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("construction failed to satisfy its guaranteed property: {0}")]
    ConstructionFailed(String),
}
