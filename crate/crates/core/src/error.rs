use thiserror::Error;

pub type Result<T, E = GeomError> = std::result::Result<T, E>;

/// Failure modes shared by every numerical routine in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("non-finite value while evaluating {context}")]
    NonFiniteEvaluation { context: &'static str },

    #[error("point outside the admissible domain: x = {x:?}, y = {y:?}")]
    DomainViolation { x: Vec<f64>, y: Option<Vec<f64>> },

    #[error("degenerate fundamental tensor (|det| = {det:e}, scale = {scale:e})")]
    DegenerateTensor { det: f64, scale: f64 },

    #[error("navigation regime violated at x = {x:?}: F(x, -V(x)) = {value}")]
    NavigationRegimeViolation { x: Vec<f64>, value: f64 },

    #[error("y is outside the pre-navigation cone: <y, V>_y = {inner}, -F(y) = {bound}")]
    PreConeViolation { inner: f64, bound: f64 },

    #[error("vector {y:?} is not in the admissible cone at x = {x:?}")]
    ConeViolation { x: Vec<f64>, y: Vec<f64> },

    #[error("Newton iteration did not converge in {iterations} iterations (residual {residual:e})")]
    NewtonDivergence { iterations: usize, residual: f64 },

    #[error("trajectory left the admissible domain at t = {time}")]
    DomainExit { time: f64 },

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("flow left the working region at t = {time}")]
    FlowEscape { time: f64 },

    #[error("covector {covector:?} at x = {x:?} is not in the range of the Legendre map")]
    LegendreOutOfRange { x: Vec<f64>, covector: Vec<f64> },

    #[error("operation requires a positive definite Finsler metric")]
    KindViolation,

    #[error("no root bracketed in [{lo}, {hi}]")]
    RootNotBracketed { lo: f64, hi: f64 },

    #[error("{count} roots found in [{lo}, {hi}], expected exactly one")]
    MultipleRoots { lo: f64, hi: f64, count: usize },

    #[error("no sample of level {level} inside the working region")]
    EmptyLevel { level: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
