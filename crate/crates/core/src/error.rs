use thiserror::Error;

/// Errors raised by graph construction, model building and the solvers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid twin partition: {0}")]
    InvalidPartition(String),
    #[error("type graph carries no capacities")]
    MissingCapacities,
    #[error("unknown class index {0}")]
    UnknownClass(usize),
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("graver basis incomplete: {0}")]
    GraverIncomplete(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("infeasible point: {0}")]
    InfeasiblePoint(String),
    #[error("instance too large for exhaustive search: {0}")]
    SizeGuard(String),
    #[error("cannot decode point: {0}")]
    NotDecodable(String),
    #[error("invalid solution: {0}")]
    InvalidSolution(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, found })
    }
}
