use thiserror::Error;

/// Every failure the library can report. The variant name doubles as the
/// machine-readable error code surfaced by the CLI (see [`Error::code`]).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown surface preset {0:?}")]
    UnknownPreset(String),
    #[error("invalid surface data: {0}")]
    InvalidSurface(String),
    #[error("genus formula gives non-integer {0}; surface data is inconsistent")]
    NonIntegralGenus(String),
    #[error("t = alpha^2 must be positive")]
    NonpositiveT,
    #[error("s must be positive")]
    NonpositiveS,
    #[error("class has rank zero; no vertical wall")]
    RankZero,
    #[error("invalid subobject rank {rank}: must exceed max(rank(v), 0) = {floor}")]
    InvalidRank { rank: i64, floor: i64 },
    #[error("class has negative discriminant {0}; no semistable objects")]
    NegativeDiscriminant(String),
    #[error("probe line beta = {0} is the vertical wall of the class")]
    ProbeOnVerticalWall(String),
    #[error("walls accumulate at the probe line: {0}")]
    DegenerateProbe(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("largest-wall candidate is not dominant: {0}")]
    DominanceFailed(String),
    #[error("subobject model is empty")]
    EmptyModel,
    #[error("central charge of the target is zero")]
    ZeroCharge,
    #[error("invalid subobject model: {0}")]
    InvalidModel(String),
    #[error("empty input")]
    EmptyInput,
    #[error("beta-bar undefined: {0}")]
    UndefinedBetaBar(String),
    #[error("wrong Chern character shape: {0}")]
    WrongShape(String),
    #[error("discriminant {0} is not positive; Q-region is not a disc")]
    DegenerateDelta(String),
    #[error("invalid degree {0}: need d >= 3")]
    InvalidDegree(i64),
    #[error("viewport is empty")]
    EmptyViewport,
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse(_) => "ParseError",
            Error::UnknownPreset(_) => "UnknownPreset",
            Error::InvalidSurface(_) => "InvalidSurface",
            Error::NonIntegralGenus(_) => "NonIntegralGenus",
            Error::NonpositiveT => "NonpositiveT",
            Error::NonpositiveS => "NonpositiveS",
            Error::RankZero => "RankZero",
            Error::InvalidRank { .. } => "InvalidRank",
            Error::NegativeDiscriminant(_) => "NegativeDiscriminant",
            Error::ProbeOnVerticalWall(_) => "ProbeOnVerticalWall",
            Error::DegenerateProbe(_) => "DegenerateProbe",
            Error::HypothesisViolated(_) => "HypothesisViolated",
            Error::DominanceFailed(_) => "DominanceFailed",
            Error::EmptyModel => "EmptyModel",
            Error::ZeroCharge => "ZeroCharge",
            Error::InvalidModel(_) => "InvalidModel",
            Error::EmptyInput => "EmptyInput",
            Error::UndefinedBetaBar(_) => "UndefinedBetaBar",
            Error::WrongShape(_) => "WrongShape",
            Error::DegenerateDelta(_) => "DegenerateDelta",
            Error::InvalidDegree(_) => "InvalidDegree",
            Error::EmptyViewport => "EmptyViewport",
        }
    }

    /// Usage errors (bad input) versus computational errors; the CLI maps
    /// these to different exit codes.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Parse(_) | Error::UnknownPreset(_) | Error::InvalidSurface(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
