use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("curve is not regular at parameter {s}: speed {speed:e} below threshold {threshold:e}")]
    NonRegular { s: f64, speed: f64, threshold: f64 },

    #[error("support function does not define a rosette: p + p'' = {radius:e} at θ = {theta}")]
    NotARosette { theta: f64, radius: f64 },

    #[error("invalid curve input: {0}")]
    InvalidInput(String),

    #[error("degenerate extremum of the angle function at s = {s}: |φ''| = {second:e}")]
    DegenerateExtremum { s: f64, second: f64 },

    #[error("no parameter origin away from inflexion points could be found")]
    BasePointInflexion,

    #[error("parameter {s} lies outside arc [{start}, {end}]")]
    OutOfArc { s: f64, start: f64, end: f64 },

    #[error("glueing scheme prolongation is not unique ({candidates} candidates) at row {row}")]
    NonUnique { row: usize, candidates: usize },

    #[error("parallel-arc structure is inconsistent: {0}")]
    Inconsistent(String),

    #[error("caustic is singular here: |κa - κb| = {gap:e}")]
    SingularPoint { gap: f64 },

    #[error("curvature vanishes at a parallel pair (κa = {ka:e}, κb = {kb:e})")]
    ZeroCurvature { ka: f64, kb: f64 },

    #[error("branch trace has a gap of {gap:e} at a row joint (allowed {allowed:e})")]
    TraceGap { gap: f64, allowed: f64 },

    #[error("normal-field winding {value} is not an integer")]
    NonIntegerWinding { value: f64 },

    #[error("tangent lines are parallel where an intersection is required: {0}")]
    DegenerateParallelogram(&'static str),

    #[error("adaptive quadrature did not converge (depth {depth}, error estimate {error:e})")]
    QuadratureFail { depth: u32, error: f64 },

    #[error("point cloud is empty")]
    EmptyCloud,
}

pub type Result<T> = std::result::Result<T, Error>;
