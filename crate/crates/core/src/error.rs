use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("size mismatch: {op} got {left:?} and {right:?}")]
    SizeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("entry count {got} does not match shape {rows}x{cols}")]
    BadShape { rows: usize, cols: usize, got: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("eigenvalue iteration did not converge after {iterations} sweeps")]
    EigenNoConvergence { iterations: usize },
    #[error("zero vector has no projective class")]
    ZeroVector,
    #[error("point is not in the negative cone (<z,z> = {0})")]
    NotNegative(f64),
    #[error("membership failure for {group}: residual {residual:e} > tol {tol:e}")]
    Membership { group: String, residual: f64, tol: f64 },
    #[error("constraint violated: {0}")]
    Constraint(String),
    #[error("unknown special element `{0}`")]
    InvalidName(String),
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("invalid recipe: {0}")]
    InvalidRecipe(String),
    #[error("scalar field mismatch: {0}")]
    FieldMismatch(String),
    #[error("empty generator set")]
    EmptyGenerators,
    #[error("numeric failure: {0}")]
    Numeric(String),
}

impl Error {
    pub(crate) fn mismatch(op: &'static str, left: (usize, usize), right: (usize, usize)) -> Self {
        Error::SizeMismatch { op, left, right }
    }
}
