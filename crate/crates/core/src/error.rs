use num_complex::Complex64;
use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors reported by the library.
///
/// Domain errors (degenerate geometry, no solution, unstable break counts)
/// are expected outcomes for some inputs and are never panics.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("operator is not special-unitary (defect {defect:.3e})")]
    InvalidOperator { defect: f64 },

    #[error("state is not normalized (defect {defect:.3e})")]
    NotNormalized { defect: f64 },

    #[error("state is not of maximally entangled form (residual {residual:.3e})")]
    NotMaximallyEntangled { residual: f64 },

    #[error("rotation axis is not a unit vector (norm {norm})")]
    InvalidAxis { norm: f64 },

    #[error("invalid field configuration: {reason}")]
    InvalidConfig { reason: String },

    #[error("degenerate field geometry: the transverse component b*sin(theta) vanishes")]
    DegenerateGeometry,

    #[error("integration accuracy lost: unitarity defect {defect:.3e} exceeds {limit:.3e}")]
    AccuracyLoss { defect: f64, limit: f64 },

    #[error("no field strength b >= 0 gives omega0/omega = {ratio} at theta = {theta}")]
    NoSolution { ratio: f64, theta: f64 },

    #[error("invalid argument: {reason}")]
    InvalidArgument { reason: String },

    #[error("break count unstable under refinement ({coarse} vs {fine} flips at {steps} steps)")]
    InsufficientResolution {
        coarse: usize,
        fine: usize,
        steps: usize,
    },

    #[error("trajectory closed in the ball but not at a +/-1 phase (overlap {overlap})")]
    NonCommensurateClosure { overlap: Complex64 },

    #[error("trajectory is open; parity check not applicable")]
    OpenTrajectory,

    #[error("invalid retarder geometry: {reason}")]
    InvalidGeometry { reason: String },

    #[error("inconsistent optics parameters: cos(2*delta) argument {value} lies outside [-1, 1]")]
    InconsistentParameters { value: f64 },

    #[error("internal consistency failure: {reason}")]
    InternalConsistency { reason: String },
}
