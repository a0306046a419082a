use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unnormalizable state")]
    Unnormalizable,

    #[error("state is not normalized (squared norm {0})")]
    NotNormalized(f64),

    #[error("non-finite amplitude")]
    NonFinite,

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("expected {expected} amplitudes, got {got}")]
    WrongLength { expected: usize, got: usize },

    #[error("particle count {0} outside supported range 1..={max}", max = crate::MAX_PARTICLES)]
    ParticleCount(usize),

    #[error("invalid basis label {0:?}")]
    InvalidLabel(String),

    #[error("invalid projector: {0}")]
    InvalidProjector(String),

    #[error("empty list: {0}")]
    Empty(&'static str),

    #[error("incomplete measurement")]
    IncompleteMeasurement,

    #[error("impossible postselection")]
    ImpossiblePostselection,

    #[error("orthogonal pre/postselection")]
    OrthogonalSelection,

    #[error("not a projector: {0}")]
    NotProjector(String),

    #[error("not a legitimate question")]
    NotLegitimate,

    #[error("scenario not found: {0}")]
    ScenarioNotFound(String),

    #[error("invalid scenario at {path}: {message}")]
    Schema { path: String, message: String },
}
