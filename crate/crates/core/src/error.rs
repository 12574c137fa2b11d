use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is empty")]
    Empty,

    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("matrix is singular (|det| = {det:e})")]
    Singular { det: f64 },

    #[error("matrix is not expansive: eigenvalue {re} + {im}i has modulus {modulus}")]
    NotExpansive { re: f64, im: f64, modulus: f64 },

    #[error("no expansion certificate found for k <= {k_max} (tolerance {tol:e})")]
    NoCertificate { k_max: usize, tol: f64 },

    #[error("dilation index is undefined for the zero vector")]
    ZeroVector,

    #[error("hyperspherical angle #{index} = {value} is out of range")]
    AngleOutOfRange { index: usize, value: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix entry ({row}, {col}) = {value} is not an integer")]
    NotInteger { row: usize, col: usize, value: f64 },

    #[error("degenerate shell: outer radius {outer} <= inner radius {inner} in some direction")]
    DegenerateShell { inner: f64, outer: f64 },

    #[error("invalid dual coefficients: {0}")]
    BadCoefficients(String),

    #[error("separation condition violated at gamma = {gamma:?}")]
    SeparationFailure { gamma: Vec<f64> },

    #[error("translation parameter {b_trans} exceeds the admissible maximum {max}")]
    TranslationTooCoarse { b_trans: f64, max: f64 },

    #[error("basis does not generate the lattice of the pair")]
    LatticeMismatch,

    #[error("lower frame bound {c1:e} is degenerate")]
    DegenerateLowerBound { c1: f64 },

    #[error("dimension {0} is not supported here (only 1 and 2)")]
    UnsupportedDimension(usize),

    #[error("signal has zero energy on the grid")]
    ZeroSignal,

    #[error("could not draw {wanted} samples from the region (accepted {got})")]
    SamplingExhausted { wanted: usize, got: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
