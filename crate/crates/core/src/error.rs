use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("word uses generator {index} but the order has {count} generators")]
    MismatchedGenerators { index: usize, count: usize },

    #[error("inhomogeneous element: degrees {first} and {second}")]
    Inhomogeneous { first: u32, second: u32 },

    #[error("degree {degree} exceeds the soundness bound {bound}")]
    UnsoundBound { degree: u32, bound: u32 },

    #[error("degree bound {bound} is below the relation degree {needed}")]
    BoundBelowRelations { bound: u32, needed: u32 },

    #[error("relations are not monomial")]
    NotMonomial,

    #[error("Gröbner basis is not known to be complete")]
    IncompleteBasis,

    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("budget exhausted: {0}")]
    Budget(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cache entry rejected: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
