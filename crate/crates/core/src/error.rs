use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("root {index} lies on the contour (distance {distance:e})")]
    PoleOnContour { index: usize, distance: f64 },

    #[error("solver did not converge after {sweeps} sweeps (worst residual {worst_residual:e})")]
    Convergence { sweeps: usize, worst_residual: f64 },

    #[error("degree {degree} exceeds the oracle limit {limit}")]
    Scope { degree: usize, limit: usize },

    #[error("probe vector is degenerate: {0}")]
    Degenerate(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
