use alloc::string::String;

/// Errors raised by the workbench computations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("not a complex: composite of differentials is nonzero at degree {0}")]
    NotAComplex(i64),
    #[error("not a chain map at degree {0}")]
    NotAChainMap(i64),
    #[error("grading mismatch")]
    GradingMismatch,
    #[error("vertex {vertex} out of range for A_{n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("position {position} out of range 1..={max}")]
    PositionOutOfRange { position: usize, max: usize },
    #[error("quiver mismatch: A_{0} vs A_{1}")]
    QuiverMismatch(usize, usize),
    #[error("label not found: {0}")]
    LabelNotFound(String),
    #[error("sectors {0} and {1} are not cyclically adjacent")]
    NotConsecutive(String, String),
    #[error("invalid incidence: {0}")]
    InvalidIncidence(String),
    #[error("certificate failure: {0}")]
    CertificateFailure(String),
    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("truncation too small: requested {requested}, available {available}")]
    TruncationTooSmall { requested: usize, available: usize },
    #[error("x-component is not invertible in degree {0}")]
    NotXInvertible(i64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = core::result::Result<T, Error>;
