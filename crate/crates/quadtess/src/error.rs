use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("argument error: {0}")]
    Argument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("angle {0} never reaches the critical angle")]
    NotInThetaF(String),
    #[error("no convergence: {0}")]
    NoConvergence(String),
    #[error("degenerate jacobian")]
    DegenerateJacobian,
    #[error("critical orbit escaped")]
    Escaped,
    #[error("no period detected within {0} iterations")]
    NoPeriodDetected(usize),
    #[error("inconsistent pair: {0}")]
    InconsistentPair(String),
    #[error("small divisor at order {0}")]
    SmallDivisor(usize),
    #[error("point not in the basin")]
    NotInBasin,
    #[error("point not in the petal basin")]
    NotInPetalBasin,
    #[error("newton diverged: {0}")]
    NewtonDivergence(String),
    #[error("model point on the slit")]
    OnSlit,
    #[error("point within edge tolerance")]
    OnEdge,
    #[error("point on a degenerating arc")]
    OnDegeneratingArc,
    #[error("point not in the interior")]
    NotInInterior,
    #[error("branch ambiguity: {0}")]
    BranchAmbiguity(String),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("point too close to the Julia set")]
    TooCloseToJulia,
    #[error("subdivision mismatch: {0}")]
    SubdivisionMismatch(String),
    #[error("violation at {0}")]
    ViolationFound(String),
    #[error("continuation stalled: {0}")]
    ContinuationStall(String),
    #[error("address failure: {0}")]
    AddressFailure(String),
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
