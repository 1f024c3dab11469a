use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate circle: both defining points coincide")]
    DegenerateCircle,
    #[error("no circle solves the tangency constraint: {0}")]
    NoSolution(String),
    #[error("point set contains identical points: {0}")]
    IdenticalPoints(String),
    #[error("invalid gadget count k = {0}")]
    InvalidK(i64),
    #[error("circle {0} does not have exactly two points on it and none inside")]
    EmptinessViolated(String),
    #[error("perturbation polynomial is identically zero for witness {0}")]
    IdenticallyZero(String),
    #[error("no certified perturbation found within the halving budget: {0}")]
    BudgetExhausted(String),
    #[error("arrangement has {cells} cells, above the cap of {cap}")]
    ArrangementOverflow { cells: usize, cap: usize },
    #[error("point set is not in convex position")]
    NotConvexPosition,
    #[error("could not produce a rational sample point: {0}")]
    SamplingFailed(String),
    #[error("interrupted by the time budget; resume from tau = {resume_tau}")]
    Interrupted { resume_tau: String },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable name, mirrored in API error payloads.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DegenerateCircle => "DegenerateCircle",
            Error::NoSolution(_) => "NoSolution",
            Error::IdenticalPoints(_) => "IdenticalPoints",
            Error::InvalidK(_) => "InvalidK",
            Error::EmptinessViolated(_) => "EmptinessViolated",
            Error::IdenticallyZero(_) => "IdenticallyZero",
            Error::BudgetExhausted(_) => "BudgetExhausted",
            Error::ArrangementOverflow { .. } => "ArrangementOverflow",
            Error::NotConvexPosition => "NotConvexPosition",
            Error::SamplingFailed(_) => "SamplingFailed",
            Error::Interrupted { .. } => "Interrupted",
            Error::InvalidInput(_) => "InvalidInput",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
