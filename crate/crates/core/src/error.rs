use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Broad failure class, used by the command line front end to pick an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Usage,
    Data,
    Numerical,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("series is empty")]
    EmptySeries,
    #[error("non-finite value {value} at position {index}")]
    NonFinite { index: usize, value: f64 },
    #[error("baseline has no interior extrema")]
    NoInteriorExtrema,
    #[error("series too short: need at least {needed} points, got {got}")]
    SeriesTooShort { needed: usize, got: usize },
    #[error("design matrix is rank deficient (|r_min| / |r_max| = {ratio:e})")]
    RankDeficient { ratio: f64 },
    #[error("decomposition has no levels")]
    EmptyDecomposition,
    #[error("position {position} is not an interior extremum")]
    NotAnExtremum { position: usize },
    #[error("invalid smoothing parameter lambda = {0}")]
    InvalidLambda(f64),
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("numerical blow-up at step {step}: |y| = {value:e}")]
    NumericalBlowup { step: usize, value: f64 },
    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("file not found: {}", .0.display())]
    FileNotFound(PathBuf),
    #[error("{}:{line}: cannot parse {value:?} as a number", path.display())]
    Parse {
        path: PathBuf,
        line: u64,
        value: String,
    },
    #[error("{}:{line}: non-finite value {value:?}", path.display())]
    NonFiniteValue {
        path: PathBuf,
        line: u64,
        value: String,
    },
    #[error("column {0:?} not found")]
    MissingColumn(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::InvalidLambda(_) | Error::InvalidParameter { .. } | Error::Config(_) => {
                ErrorClass::Usage
            }
            Error::RankDeficient { .. }
            | Error::NumericalBlowup { .. }
            | Error::NoInteriorExtrema
            | Error::EmptyDecomposition => ErrorClass::Numerical,
            _ => ErrorClass::Data,
        }
    }
}
