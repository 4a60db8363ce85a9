use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Gjms6Error {
    #[error("invalid boundary dimension n = {0}; need n >= 5")]
    InvalidDimension(i64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("boundary operator index {0} out of range 0..=5")]
    OperatorIndex(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("degenerate mode: {0}")]
    DegenerateMode(String),
    #[error("singular system: {0}")]
    Singular(String),
    #[error("scattering pole at s = {0}")]
    ScatteringPole(String),
    #[error("gamma = {gamma} is outside (0, n/2) for n = {n}")]
    GammaOutOfRange { n: i64, gamma: String },
    #[error("critical case 2*gamma = n; use the logarithmic inequality")]
    Critical,
    #[error("metric is not in normal form: {0}")]
    NonNormalForm(String),
    #[error("zonal expansion under-resolved: {0}")]
    UnderResolved(String),
    #[error("collocation failure: {0}")]
    Collocation(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("missing series: {0}")]
    MissingSeries(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Gjms6Error>;

impl From<std::io::Error> for Gjms6Error {
    fn from(e: std::io::Error) -> Self {
        Gjms6Error::Io(e.to_string())
    }
}
