use num_complex::Complex64;
use thiserror::Error;

use crate::complex_rational::SpherePoint;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("rational function is identically zero; order undefined")]
    ZeroFunction,

    #[error("evaluation at {z} is within {clearance:e} of the puncture {puncture}")]
    NearSingularity {
        z: Complex64,
        puncture: SpherePoint,
        clearance: f64,
    },

    #[error("metric is singular at the puncture {0}")]
    SingularMetric(SpherePoint),

    #[error("invalid Weierstrass datum: {0}")]
    InvalidDatum(String),

    #[error("no convergence within the iteration budget (last {last}, previous {previous})")]
    ConvergenceFailure { last: f64, previous: f64 },

    #[error("asymptotic model undefined: end at {0} is asymptotic to neither a catenoid-type nor a planar end")]
    ModelUndefined(SpherePoint),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("numeric instability: {0}")]
    NumericInstability(String),

    #[error("parameter out of range: {0}")]
    Parameter(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
