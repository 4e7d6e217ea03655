use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("algebra dimension {0} outside supported range 1..=12")]
    UnsupportedDimension(usize),

    #[error("element is not invertible (norm {0:e})")]
    Singular(f64),

    #[error("multivector is not a vector (non-vector part {0:e})")]
    NotAVector(f64),

    #[error("evaluation point lies on the singular set: {0}")]
    OnSingularSet(String),

    #[error("stencil point within {reach:e} of the singular set (distance {distance:e})")]
    SingularProximity { reach: f64, distance: f64 },

    #[error("point is not on the unit sphere (|x| = {0})")]
    OffSphere(f64),

    #[error("parameters outside the regime of this kernel: {0}")]
    RegimeMismatch(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("Vahlen matrix fails validity: {0}")]
    InvalidVahlen(String),

    #[error("point is mapped to infinity")]
    PointAtInfinity,

    #[error("non-finite value at node {0}")]
    NonFinite(usize),

    #[error("bundle periodicity check failed: defect {defect:e} > {tol:e}")]
    Periodicity { defect: f64, tol: f64 },

    #[error("surface violates a precondition: {0}")]
    Surface(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}
