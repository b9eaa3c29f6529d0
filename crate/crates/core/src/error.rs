use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("expected a form of pure bidegree ({p},{q})")]
    Bidegree { p: usize, q: usize },

    #[error("form is not real (conj(a) != a)")]
    NotReal,

    #[error("form is not positive definite at sample point {index}")]
    NotPositive { index: usize },

    #[error("power k = {k} outside the range 1..={max}")]
    PowerOutOfRange { k: usize, max: usize },

    #[error("astheno-Kahler condition needs complex dimension >= 3, got {0}")]
    AsthenoDimension(usize),

    #[error("form is not d-closed")]
    NotClosed,

    #[error("map is not holomorphic: {0}")]
    NotHolomorphic(String),

    #[error("endomorphism correction has a t-free part or is not nilpotent under truncation")]
    NotNilpotent,

    #[error("truncation order {found} is below the required {required}")]
    TruncationTooLow { required: u32, found: u32 },

    #[error("deformation must vanish at t = 0")]
    NonzeroAtOrigin,

    #[error("expected a vector form of antiholomorphic degree {expected}, found {found}")]
    VectorDegree { expected: usize, found: usize },

    #[error("point set is empty")]
    EmptyPointSet,

    #[error("factor variable sets overlap at coordinate {0}")]
    OverlappingVariables(usize),

    #[error("hypothesis fails: {0}")]
    Hypothesis(String),

    #[error("cannot evaluate: {0}")]
    Evaluation(String),

    #[error("complex dimension {0} is outside the supported range 1..=6")]
    DimensionCap(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
