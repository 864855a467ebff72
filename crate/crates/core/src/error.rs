use thiserror::Error;

/// Failure modes shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero has no content decomposition")]
    ZeroContent,
    #[error("{0}: zero polynomial")]
    ZeroPolynomial(&'static str),
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,
    #[error("discriminant of radical only")]
    NotSquarefree,
    #[error("{op}: {reason}")]
    Domain { op: &'static str, reason: String },
    #[error("infeasible: raise degree bound")]
    Infeasible,
    #[error("polynomial is not Higman-solvable ({0})")]
    NotSolvable(&'static str),
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("syntax error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("group: {0}")]
    Group(String),
    #[error("configuration: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn domain(op: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            op,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
