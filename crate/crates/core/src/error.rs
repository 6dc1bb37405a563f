use thiserror::Error;

use crate::algebra::Mode;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("theta not skew-symmetric at entry ({row}, {col})")]
    ThetaNotSkew { row: usize, col: usize },
    #[error("theta entry ({row}, {col}) is not finite")]
    ThetaNotFinite { row: usize, col: usize },
    #[error("matrix size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("matrix size must be positive")]
    ZeroSize,
    #[error("coefficient at mode {mode} has shape {rows}x{cols}, expected {expected}x{expected}")]
    CoefficientShape { mode: Mode, rows: usize, cols: usize, expected: usize },
    #[error("duplicate coefficient for mode {0}")]
    DuplicateMode(Mode),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FieldError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("element is not unitary: worst entry deviation {violation:e}")]
    NotUnitary { violation: f64 },
    #[error("deformation matrices of the operands differ")]
    ThetaMismatch,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ActionError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("gauge field is not skew-adjoint: worst violation {worst:e}")]
    SkewViolation { worst: f64 },
    #[error("coefficient formula requires a field without zero modes (component {component} has one)")]
    ZeroModePresent { component: usize },
    #[error("index pairing residual {residual:e} exceeds tolerance {tolerance:e} (raw value {raw})")]
    IndexResidual { raw: f64, residual: f64, tolerance: f64 },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LoopError {
    #[error("propagator or vertex leg with zero momentum")]
    ZeroMomentum,
    #[error("level k must be nonzero")]
    ZeroLevel,
    #[error("cutoff must be at least {min}, got {got}")]
    CutoffTooSmall { min: i64, got: i64 },
    #[error("pairing count {count} exceeds the ceiling {ceiling}")]
    PairingCeiling { count: usize, ceiling: usize },
    #[error("momentum-sum work estimate {estimate:e} exceeds the ceiling {ceiling:e}")]
    WorkCeiling { estimate: f64, ceiling: f64 },
    #[error("matrix size N must be positive")]
    ZeroSize,
}

/// Parse and validation failures for the JSON formats; `path` names the
/// offending key (for example `components.2[3].re[1][0]`).
#[derive(Debug, Error, Clone, PartialEq)]
pub enum IoError {
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
    #[error("{path}: {message}")]
    File { path: String, message: String },
}

impl IoError {
    pub fn invalid(path: impl Into<String>, message: impl Into<String>) -> Self {
        IoError::Invalid { path: path.into(), message: message.into() }
    }
}
