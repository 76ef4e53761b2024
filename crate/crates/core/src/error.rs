use thiserror::Error;

/// Everything that can go wrong while building or querying moment-problem objects.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("moment sequence is empty")]
    EmptySequence,

    #[error("non-finite input: {0}")]
    NonFiniteInput(String),

    #[error("moment s_{index} is not representable as a finite f64")]
    OverflowRisk { index: usize },

    #[error("polynomial of degree {degree} needs moments up to s_{degree}, only s_0..s_{max} available")]
    DegreeExceedsMoments { degree: usize, max: usize },

    #[error("order {order} needs {needed} moments, {available} available")]
    InsufficientMoments { order: usize, needed: usize, available: usize },

    #[error("Hankel matrix is not positive definite at order {order}")]
    NotPositiveDefinite { order: usize },

    #[error("Hankel matrix is ill-conditioned at order {order} (pivot ratio {estimate:e})")]
    IllConditioned { order: usize, estimate: f64 },

    #[error("requested order {order} exceeds the hard cap {cap}")]
    OrderCap { order: usize, cap: usize },

    #[error("index {index} out of range (max {max})")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("P_n vanishes at the evaluation point")]
    PoleAtZ,

    #[error("Moebius map is degenerate")]
    DegenerateMap,

    #[error("points are collinear or coincide")]
    CollinearPoints,

    #[error("z must lie in the open upper half-plane")]
    RealAxisZ,

    #[error("order {order} is not certified (system order {certified})")]
    NotCertified { order: usize, certified: usize },

    #[error("P_n vanishes at the support endpoint a = {a}")]
    PoleAtA { a: f64 },

    #[error("interval requires a < b, got a = {a}, b = {b}")]
    BadInterval { a: f64, b: f64 },

    #[error("gaps must be ordered and disjoint")]
    OverlappingGaps,

    #[error("evaluation point coincides with the atom at {x}")]
    PoleAtAtom { x: f64 },

    #[error("root finding failed for degree {degree} (residual {residual:e})")]
    RootFindingFailed { degree: usize, residual: f64 },

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    /// Stable variant name, used by the CLI when reporting precondition failures.
    pub fn name(&self) -> &'static str {
        match self {
            Error::EmptySequence => "EmptySequence",
            Error::NonFiniteInput(_) => "NonFiniteInput",
            Error::OverflowRisk { .. } => "OverflowRisk",
            Error::DegreeExceedsMoments { .. } => "DegreeExceedsMoments",
            Error::InsufficientMoments { .. } => "InsufficientMoments",
            Error::NotPositiveDefinite { .. } => "NotPositiveDefinite",
            Error::IllConditioned { .. } => "IllConditioned",
            Error::OrderCap { .. } => "OrderCap",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::PoleAtZ => "PoleAtZ",
            Error::DegenerateMap => "DegenerateMap",
            Error::CollinearPoints => "CollinearPoints",
            Error::RealAxisZ => "RealAxisZ",
            Error::NotCertified { .. } => "NotCertified",
            Error::PoleAtA { .. } => "PoleAtA",
            Error::BadInterval { .. } => "BadInterval",
            Error::OverlappingGaps => "OverlappingGaps",
            Error::PoleAtAtom { .. } => "PoleAtAtom",
            Error::RootFindingFailed { .. } => "RootFindingFailed",
            Error::InvalidMeasure(_) => "InvalidMeasure",
            Error::InvalidParameter(_) => "InvalidParameter",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
