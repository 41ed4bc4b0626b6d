use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} of {requested} qubits exceeds the capacity cap of {cap}")]
    Capacity { what: &'static str, requested: usize, cap: usize },

    #[error("qubit count must be at least {min}, got {got}")]
    TooFewQubits { min: usize, got: usize },

    #[error("qubit index {index} out of range for {n} qubits")]
    QubitOutOfRange { index: usize, n: usize },

    #[error("duplicate qubit index {0}")]
    DuplicateQubit(usize),

    #[error("empty qubit set")]
    EmptyQubitSet,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("phase wrap: |gamma| * bound = {product} reaches pi; rescale the model or enable the override")]
    PhaseWrap { product: f64 },

    #[error("matrix is not Hermitian: |H[{row}][{col}] - conj(H[{col}][{row}])| = {deviation}")]
    NotHermitian { row: usize, col: usize, deviation: f64 },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("infeasible problem: no bitstring satisfies the constraint")]
    Infeasible,

    #[error("{method} gradients are not supported for the Grover mixer; use finite differences")]
    UnsupportedGradient { method: &'static str },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }
}
