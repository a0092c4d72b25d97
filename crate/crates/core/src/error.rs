use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vector is not unimodular: every coordinate is divisible by {p}")]
    NotUnimodular { p: u64 },
    #[error("matrix is not invertible over Z/{p}^{n}")]
    NotInvertible { p: u64, n: u32 },
    #[error("differentials do not compose to zero between degrees {degree} and {degree}+1")]
    NonComplex { degree: usize },
    #[error("size limit exceeded: {needed} > cap {cap}")]
    SizeLimit { needed: String, cap: String },
    #[error("precision too low: need level >= {needed}, have {have}")]
    PrecisionTooLow { needed: u32, have: u32 },
    #[error("point lies inside an excluded tube of the arrangement")]
    PointInTube,
    #[error("modulus {m} is not coprime to p = {p}")]
    BadModulus { m: u64, p: u64 },
    #[error("malformed filtered system: {0}")]
    MalformedSystem(String),
    #[error("computed cohomology disagrees with the closed-form prediction: {0}")]
    PredictionMismatch(String),
    #[error("operands live over different truncated rings")]
    RingMismatch,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
