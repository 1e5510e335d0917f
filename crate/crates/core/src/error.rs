use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not symmetric (max |M - M^T| = {0:.3e})")]
    NotSymmetric(f64),
    #[error("matrix is not unitary (max |M M^dag - I| = {0:.3e})")]
    NotUnitary(f64),
    #[error("iteration did not converge: {0}")]
    ConvergenceFailure(String),
    #[error("coordinate ({0:.6}, {1:.6}, {2:.6}) lies outside the Weyl chamber")]
    NotInChamber(f64, f64, f64),
    #[error("nonlocal content violates ordering or width constraints: {0}")]
    ConstraintViolation(String),
    #[error("partition {0} does not fit in a {1}x{2} box")]
    BoxViolation(String, usize, usize),
    #[error("invalid nonlocal content: {0}")]
    InvalidContent(String),
    #[error("exact arithmetic exceeded the supported magnitude")]
    NumericOverflow,
    #[error("parameter {value} outside [{lo}, {hi}]")]
    OutOfRange { value: f64, lo: f64, hi: f64 },
    #[error("coordinate is on neither the c1 = c2 nor the c2 = c3 plane")]
    NotOnFsimPlane,
    #[error("calibration search did not reach tolerance (residual {0:.3e})")]
    CalibrationFailure(f64),
    #[error("target class is not reachable in two applications: {0}")]
    NotReachable(String),
    #[error("no member of family `{0}` reaches the target class in two applications")]
    NotReachableByFamily(String),
    #[error("optimizer budget exhausted (best fidelity {:.9})", .0.fidelity)]
    BudgetExhausted(Box<crate::synthesis::SynthesisResult>),
    #[error("invalid tolerance policy: {0}")]
    InvalidTolerance(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
