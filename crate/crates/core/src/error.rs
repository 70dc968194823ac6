use num_complex::Complex64;
use thiserror::Error;

/// Failures raised by the numerical routines.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum LabError {
    #[error("point {point} lies outside the domain: {what}")]
    Domain { point: Complex64, what: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("empty schedule")]
    EmptySchedule,

    #[error("quadrature did not reach tolerance {tol:e} (estimated error {error:e}) within {budget} subdivisions")]
    QuadratureNonConvergence { tol: f64, error: f64, budget: usize },

    #[error("2D refinement budget exceeded: discrepancy {discrepancy:e} above {tol:e}")]
    RefinementBudget { discrepancy: f64, tol: f64 },

    #[error("series tail bound {bound:e} exceeds tolerance {tol:e} with {terms} terms")]
    Truncation { bound: f64, tol: f64, terms: usize },

    #[error("ill-conditioned radii: ratio {ratio} above 0.95")]
    IllConditioned { ratio: f64 },

    #[error("angular sampling {samples} below 4m = {required}")]
    Aliasing { samples: usize, required: usize },

    #[error("non-finite sample at {point}")]
    NonFinite { point: Complex64 },

    #[error("nonpositive sup value {value} at level {level}")]
    NonpositiveSup { level: f64, value: f64 },

    #[error("negative value {value} at {point} contradicts the claimed regularity")]
    NegativeValue { point: Complex64, value: f64 },

    #[error("hypothesis violated ({what}) at witness {witness}")]
    HypothesisViolation { what: String, witness: Complex64 },

    #[error("field regularity {found} does not match the requirement {required}")]
    RegularityMismatch { found: String, required: String },

    #[error("region mismatch: {0}")]
    RegionMismatch(String),

    #[error("exponent ordering violated: {0}")]
    ExponentOrdering(String),

    #[error("sampled direction deviates from the target ray by {deviation:e}")]
    DegenerateRay { deviation: f64 },

    #[error("evaluation on a branch cut at {point}")]
    OnCut { point: Complex64 },

    #[error("spectral point hit at indices {indices:?}")]
    SpectrumHit { indices: Vec<usize> },

    #[error("dense solve failed: residual {residual:e}")]
    SingularSolve { residual: f64 },

    #[error("evolution overflowed")]
    Overflow,

    #[error("Fourier type p = 1 is not meaningful for the resolvent criterion")]
    PNotMeaningful,

    #[error("lambda = {lambda} lies on the imaginary axis")]
    ImaginaryAxis { lambda: Complex64 },

    #[error("horizon {required} exceeds the allowed maximum {allowed}")]
    HorizonInsufficient { required: f64, allowed: f64 },

    #[error("operator mode mismatch: {0}")]
    ModeMismatch(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, LabError>;
