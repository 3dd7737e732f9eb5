use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("index out of range: {what} = {index}, limit {limit}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        limit: usize,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no gate parameters satisfy the constraints: {0}")]
    Infeasible(String),

    /// Norm drift beyond tolerance; a smaller step usually fixes it.
    #[error("norm drift {drift:.3e} exceeds tolerance {tol:.1e}; reduce the step (raise steps_per_radian)")]
    NumericalFailure { drift: f64, tol: f64 },

    /// Population reached the top of the Fock basis.
    #[error("truncation leakage {leakage:.3e} exceeds tolerance {tol:.1e}; raise the Fock cutoff")]
    TruncationFailure { leakage: f64, tol: f64 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A failure inside one point of a sweep.
    #[error("{experiment} at {param_name} = {param_value}: {source}")]
    AtPoint {
        experiment: String,
        param_name: String,
        param_value: f64,
        source: Box<Error>,
    },
}

impl Error {
    /// True for errors raised by the integrator's unitarity or leakage monitors.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::NumericalFailure { .. } | Error::TruncationFailure { .. } => true,
            Error::AtPoint { source, .. } => source.is_numerical(),
            _ => false,
        }
    }
}
