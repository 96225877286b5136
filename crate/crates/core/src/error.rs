use thiserror::Error;

use crate::kernel::rational::Rational;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("{which} is not homogeneous")]
    NonHomogeneous { which: String },

    #[error("{which} has degree {degree}; corank 1 requires degree >= 2")]
    DegreeTooLow { which: String, degree: u32 },

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("interval does not isolate exactly one root")]
    InvalidInterval,

    #[error("nothing to eliminate: both inputs are constant in {0}")]
    NothingToEliminate(String),

    #[error("finite determinacy violated: {0}")]
    FiniteDeterminacy(String),

    #[error("truncation insufficient: series agree below order {bound}; required truncation order > {bound}")]
    Truncation { bound: Rational },

    #[error("invalid arc: {0}")]
    InvalidArc(String),

    #[error("branch list not reduced: branches {0} and {1} coincide")]
    BranchListNotReduced(usize, usize),

    #[error("contact matrix invariant violated: {0}")]
    ContactInvariant(String),

    #[error("complex is not canonical: {0}")]
    NonCanonical(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("numeric oracle: {0}")]
    Oracle(String),

    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
