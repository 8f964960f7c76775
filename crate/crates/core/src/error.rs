use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid Dynkin graph {family}{rank}")]
    InvalidGraph { family: char, rank: usize },
    #[error("invalid RFS type {0}: {1}")]
    InvalidType(String, String),
    #[error("window too small: need at least {needed} slices, got {got}")]
    WindowTooSmall { needed: i64, got: i64 },
    #[error("vertex ({p},{q}) lies outside window [{p_min},{p_max}]")]
    OutsideWindow { p: i64, q: usize, p_min: i64, p_max: i64 },
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("projective module M({top},{length}) has no stable counterpart")]
    Projective { top: usize, length: usize },
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("not a simple-minded system")]
    NotSms,
    #[error("subset is not Nakayama-stable")]
    NotNakayamaStable,
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("mutation failed: {0}")]
    Mutation(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
