use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("|x| = {radius} is beyond the validity radius {valid} of the truncated family")]
    OutOfValidity { radius: f64, valid: f64 },
    #[error("root finder did not converge after {iterations} iterations")]
    NonConvergence { iterations: usize },
    #[error("ill-conditioned node configuration (condition estimate {condition:e})")]
    IllConditioned { condition: f64 },
    #[error("interpolation residual {residual:e} exceeds tolerance {tolerance:e}")]
    InterpolationResidual { residual: f64, tolerance: f64 },
    #[error("evaluation hit a pole at {re} + {im}i")]
    PoleHit { re: f64, im: f64 },
    #[error("no derivative available for this function at the exceptional point")]
    DerivativeUnavailable,
    #[error("closure failed its residual cross-check ({residual:e})")]
    DegreeMismatch { residual: f64 },
    #[error("iterate depth {depth} exceeds the configured maximum {max}")]
    DepthExceeded { depth: usize, max: usize },
    #[error("quadrature error estimate {estimate:e} above tolerance after refinement cap")]
    QuadratureFailure { estimate: f64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("function has a pole in |x| <= {radius}")]
    NotEntire { radius: f64 },
    #[error("r = {r} is below the lower validity radius R0 = {r0}")]
    BelowR0 { r: f64, r0: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("empirical liminf unstable: decade-to-decade spread {spread:e}")]
    EmpiricalUnstable { spread: f64 },
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("characteristic is constant on the grid; order estimate is degenerate")]
    DegenerateT,
    #[error("growth parameter alpha is zero")]
    AlphaZero,
    #[error("radius precondition violated: {0}")]
    PreconditionRadius(String),
    #[error("singular summand: denominator {denominator:e}")]
    SingularHit { denominator: f64 },
    #[error("hypothesis violation: {0}")]
    HypothesisViolation(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("manufactured solution is degenerate: {0}")]
    SolutionDegenerate(String),
    #[error("equation residual {residual:e} exceeds tolerance {tolerance:e}")]
    EquationResidual { residual: f64, tolerance: f64 },
}

impl Error {
    pub(crate) fn pole(at: crate::C64) -> Self {
        Error::PoleHit { re: at.re, im: at.im }
    }
}
