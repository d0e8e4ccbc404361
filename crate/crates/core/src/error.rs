use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("malformed decimal number: {0:?}")]
    Parse(String),
    #[error("zero cannot be written as mantissa times a power of ten")]
    ZeroNotRepresentable,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("degenerate angle: cos C must lie strictly between 0 and 1, got {0}")]
    DegenerateAngle(String),
    #[error("decimal exponent out of range")]
    ExponentOverflow,
    #[error("even root of a negative number has no real solution")]
    EvenRootOfNegative,
    #[error("geometric mean needs operands of the same sign")]
    SignMismatch,
    #[error("no integer exponent up to {max_n} reproduces the target")]
    NoIntegerExponent { max_n: u64 },
    #[error("search did not converge: {0}")]
    NoConvergence(String),
    #[error("arm {arm} needs length {length}, outside the telescopic range")]
    ArmOutOfRange { arm: String, length: f64 },
    #[error("depth {depth} exceeds the {arms} arms of the device")]
    DepthExceeded { depth: usize, arms: usize },
    #[error("arm {0} is not fastened")]
    NotFastened(String),
    #[error("inconsistent trace: {0}")]
    InconsistentTrace(String),
    #[error("invalid precision policy: {0}")]
    InvalidPolicy(String),
    #[error("script line {line}: {msg}")]
    Script { line: usize, msg: String },
}
