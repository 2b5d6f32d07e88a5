use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate form")]
    DegenerateForm,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix dimensions do not match: {0}")]
    Dimension(String),
    #[error("invalid invariant factors {0:?}")]
    InvalidFactors(Vec<u64>),
    #[error("rank {0} unsupported (at most 4)")]
    RankUnsupported(usize),
    #[error("form is not reduced: {0}")]
    NotReduced(String),
    #[error("gcd({0}, {1}) != 1")]
    NotCoprime(i64, i64),
    #[error("not a rational homology sphere")]
    NotRationalHomologySphere,
    #[error("seifert data is not normalized (need 0 < beta < alpha)")]
    NotNormalized,
    #[error("no definite plumbing for either orientation")]
    NoDefinitePlumbing,
    #[error("invalid link descriptor: {0}")]
    Descriptor(String),
    #[error("operation requires a knot, link has {0} components")]
    NotAKnot(usize),
    #[error("omega must not be 1")]
    TrivialOmega,
    #[error("diagram error: {0}")]
    Diagram(String),
    #[error("could not certify the sign of a cyclotomic value")]
    UncertifiedSign,
}

pub type Result<T> = std::result::Result<T, Error>;
