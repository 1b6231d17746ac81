use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("chimera parameters must be positive: rows={rows}, cols={cols}, shore={shore}")]
    InvalidChimeraParams {
        rows: usize,
        cols: usize,
        shore: usize,
    },

    #[error("vertex id {id} out of range for graph with {n} vertices")]
    VertexOutOfRange { id: usize, n: usize },

    #[error("matrix is not square: {rows} x {cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric at ({i},{j}): |a_ij - a_ji| = {deviation}")]
    NotSymmetric { i: usize, j: usize, deviation: f64 },

    #[error("top eigenvalue is degenerate (mu1 = mu2 = {value}); centralization is ill-defined")]
    DegenerateTopEigenvalue { value: f64 },

    #[error("eigenvalue {value} at index {index} equals 1; condition metrics are undefined")]
    UnitBulkEigenvalue { index: usize, value: f64 },

    #[error("hopping rate must be nonnegative, got {gamma}")]
    NegativeGamma { gamma: f64 },

    #[error("evolution time must be nonnegative, got {t}")]
    NegativeTime { t: f64 },

    #[error("success probability {p} exceeds 1 beyond tolerance; spectrum is inconsistent")]
    UnitarityViolation { p: f64 },

    #[error("success probability {p} too small to evaluate cost")]
    DegenerateProbability { p: f64 },

    #[error("probe probability at t=1 is numerically zero; cannot bound evolution time")]
    PathologicalProbe,

    #[error("start coordinate {value} (dimension {dim}) lies outside the optimization box")]
    StartOutOfBox { dim: usize, value: f64 },

    #[error("objective returned a non-finite value")]
    NonFiniteObjective,

    #[error("invalid Nelder-Mead configuration: {0}")]
    InvalidNelderMeadConfig(String),

    #[error("regression needs at least 3 points, got {0}")]
    TooFewPoints(usize),

    #[error("log-log regression requires positive values, got ({x}, {y})")]
    RegressionDomain { x: f64, y: f64 },

    #[error("family index range {lo}..={hi} yields fewer than 3 graphs within size cap {cap}")]
    FamilyTooSmall { lo: usize, hi: usize, cap: usize },

    #[error("invalid family specification: {0}")]
    InvalidFamily(String),

    #[error("malformed graph file: {0}")]
    MalformedGraph(String),

    #[error("malformed records CSV at line {line}: {reason}")]
    MalformedRecords { line: usize, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
