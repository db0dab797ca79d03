use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("qubit count {n} outside supported range 1..={max}")]
    QubitCount { n: usize, max: usize },

    #[error("qubit index {index} out of range for {n} qubits")]
    QubitIndex { index: usize, n: usize },

    #[error("{what} has length {got}, expected {expected}")]
    LengthMismatch {
        what: &'static str,
        got: usize,
        expected: usize,
    },

    #[error("non-finite value in {what}")]
    NonFinite { what: &'static str },

    #[error("coupling ({i}, {j}) must satisfy i < j")]
    CouplingOrder { i: usize, j: usize },

    #[error("conflicting duplicate entries for coupling ({i}, {j})")]
    ConflictingCoupling { i: usize, j: usize },

    #[error("coupling matrix is not symmetric at ({i}, {j})")]
    AsymmetricCoupling { i: usize, j: usize },

    #[error("coupling matrix has nonzero diagonal at qubit {i}")]
    DiagonalCoupling { i: usize },

    #[error("path base has {base} qubits but direction has {direction}")]
    PathQubitMismatch { base: usize, direction: usize },

    #[error("path produced an invalid system at lambda = {lambda}: {reason}")]
    InvalidPathOutput { lambda: f64, reason: String },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric: |H[{row}][{col}] - H[{col}][{row}]| = {diff:e}")]
    NotSymmetric { row: usize, col: usize, diff: f64 },

    #[error("matrix dimension {dim} exceeds cap {max}")]
    DimensionTooLarge { dim: usize, max: usize },

    #[error("eigensolver did not converge for eigenvalue {index}")]
    NoConvergence { index: usize },

    #[error("DegenerateGround: gap {gap:e} <= tolerance {tol:e}")]
    DegenerateGround { gap: f64, tol: f64 },

    #[error("dimension {dim} is not a power of two")]
    NotQubitSpace { dim: usize },

    #[error("state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("state is not an eigenstate (residual {residual:e})")]
    NotEigenstate { residual: f64 },

    #[error("state is not fully separable")]
    NotFullySeparable,

    #[error("invalid bipartition mask {mask:#x} for {n} qubits")]
    InvalidBipartition { mask: u32, n: usize },

    #[error("bipartitions require at least 2 qubits, got {n}")]
    TooFewQubits { n: usize },

    #[error("invalid sweep configuration: {0}")]
    InvalidSweep(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
