use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("polynomial degree must be at least 1")]
    ZeroDegree,

    #[error("expected {expected} samples, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("x = {0} lies outside [-1, 1]")]
    OutsideReference(f64),

    #[error("s = {0} lies outside [0, 2]")]
    OutsideInterval(f64),

    #[error("parameter is not finite")]
    NonFinite,

    #[error("|z| = {0:e} is below the engine floor 1e-8")]
    BelowFloor(f64),

    #[error("Re z = {sigma} exceeds the admissibility ceiling mu0 = {mu0}")]
    Inadmissible { sigma: f64, mu0: f64 },

    #[error("tridiagonal window ({lo}, {hi}) is empty")]
    EmptyWindow { lo: usize, hi: usize },

    #[error("boundary values must be supplied together or not at all")]
    MixedBoundary,

    #[error("Thomas pivot {pivot:e} at row {row} fell below 1e-10")]
    NearSingular { row: usize, pivot: f64 },

    #[error("dense system is singular at column {0}")]
    Singular(usize),

    #[error("z = {0} is within 1e-12 of a resolvent pole")]
    PoleProximity(num_complex::Complex64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
