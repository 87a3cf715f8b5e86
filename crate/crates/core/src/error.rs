use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension must be at least 1, got {0}")]
    InvalidDimension(u32),
    #[error("alpha = {alpha} outside [0, {n}]")]
    InvalidAlpha { alpha: f64, n: u32 },
    #[error("beta = {beta} must exceed alpha - N = {bound}")]
    InvalidBeta { beta: f64, bound: f64 },
    #[error("radius must be positive and finite, got {0}")]
    NonpositiveRadius(f64),
    #[error("quadrature did not converge: estimate {value:e}, error {error:e} after {subdivisions} subdivisions")]
    QuadratureFailure {
        value: f64,
        error: f64,
        subdivisions: usize,
    },
    #[error("divergent integral ({0})")]
    DivergentIntegral(String),
    #[error("profile has unbounded support but no declared tail behaviour")]
    MissingAsymptoticSpec,
    #[error("outside the covered hypotheses: {0}")]
    OutOfHypothesis(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("admissible parameter interval is empty: {0}")]
    EmptyParameterInterval(String),
    #[error("degenerate samples: {0}")]
    DegenerateSamples(String),
    #[error("scaling constant undefined: {0}")]
    ScalingUndefined(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
