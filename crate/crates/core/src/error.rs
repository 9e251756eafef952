use thiserror::Error;

/// Errors produced by graph construction, dictionary assembly, sparse coding
/// and the learning loop.
#[derive(Debug, Error)]
pub enum Error {
    #[error("weight matrix is not square: {rows} x {cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("graph needs at least 2 vertices, got {0}")]
    TooFewVertices(usize),

    #[error("non-finite entry at ({row}, {col})")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("weight matrix is asymmetric at ({row}, {col}): {a} != {b}")]
    AsymmetricMatrix {
        row: usize,
        col: usize,
        a: f64,
        b: f64,
    },

    #[error("negative weight {value} at ({row}, {col})")]
    NegativeWeight { row: usize, col: usize, value: f64 },

    #[error("nonzero diagonal entry {value} at vertex {index}")]
    NonzeroDiagonal { index: usize, value: f64 },

    #[error("kernel decay rate must be positive, got {0}")]
    InvalidTau(f64),

    #[error("polynomial degree must be at least 1, got {0}")]
    InvalidDegree(usize),

    #[error("kernel row {0} has no nonzero coefficient")]
    EmptyKernelRow(usize),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("atom {0} has numerically zero norm; degenerate graph/kernel combination")]
    ZeroAtom(usize),

    #[error("least-squares solve failed on the selected support: {0}")]
    RankDeficientSupport(String),

    #[error("encoding signal column {column} failed: {source}")]
    ColumnEncoding {
        column: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("vertex {0} became isolated during optimization")]
    IsolatedVertexInIterate(usize),

    #[error("objective diverged to {objective:.3e} at inner step {step}; reduce the step size")]
    DivergenceDetected { objective: f64, step: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("signal set is empty")]
    EmptySignalSet,

    #[error("graph generation failed after {attempts} attempts (isolated vertices persisted)")]
    GenerationFailed { attempts: usize },

    #[error("density calibration failed: {0}")]
    CalibrationFailed(String),

    #[error("learning failed at outer iteration {iteration}: {source}")]
    Learning {
        iteration: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("cannot aggregate an empty metrics list")]
    EmptyList,

    #[error("parse error in {path}: {message}")]
    Parse { path: String, message: String },

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
