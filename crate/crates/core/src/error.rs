use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("inversion of the semifield zero")]
    InversionOfZero,
    #[error("zero raised to a non-positive power")]
    ZeroToNonpositivePower,
    #[error("value {0} is not an element of the {1} semifield")]
    InvalidScalar(f64, &'static str),
    #[error("operands belong to different semifields")]
    SemifieldMismatch,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty vector or matrix")]
    Empty,
    #[error("conjugate of the zero vector")]
    ZeroVector,
    #[error("non-regular input: {0}")]
    NonRegularInput(&'static str),
    #[error("sample abscissa at index {0} is the semifield zero")]
    ZeroAbscissa(usize),
    #[error("model evaluated at the semifield zero")]
    ZeroArgument,
    #[error("duplicate degree {0}")]
    DuplicateDegree(String),
    #[error("invalid rational '{0}'")]
    InvalidRational(String),
    #[error("degree range [{min}, {max}] holds fewer than {n} integers")]
    RangeTooNarrow { min: i64, max: i64, n: usize },
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
    #[error("every sampled degree class failed to fit")]
    NoSuccessfulFit,
    #[error("residual check failed: distance {distance} differs from sqrt(delta) {error}")]
    ResidualMismatch { distance: f64, error: f64 },
    #[error("malformed row at line {0}")]
    MalformedRow(usize),
    #[error("empty sample file")]
    EmptyFile,
    #[error("malformed model document: {0}")]
    MalformedModel(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
