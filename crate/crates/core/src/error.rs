use thiserror::Error;

/// Every failure the engine can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("Jacobi identity fails on ({0}, {1}, {2})")]
    JacobiViolation(String, String, String),
    #[error("inconsistent bracket input for ({0}, {1})")]
    InconsistentBracket(String, String),
    #[error("constraint violated: {0}")]
    ConstraintViolation(String),
    #[error("bracket not preserved on ({0}, {1}): image of bracket is {2}, bracket of images is {3}")]
    BracketMismatch(String, String, String, String),
    #[error("adjoint action is not nilpotent within {0} steps")]
    NotNilpotent(usize),
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("truncation order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("series must have vanishing constant term")]
    OrderViolation,
    #[error("series must have the unit as constant term")]
    UnitViolation,
    #[error("jordanian twist requires a nonzero eigenvalue delta")]
    DeltaZero,
    #[error("extension factor needs a jordanian sigma context")]
    MissingSigma,
    #[error("the element v of the twisted antipode is not invertible")]
    NonInvertibleV,
    #[error("first-order coefficient is not in g (x) g: {0}")]
    NotFirstOrder(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("esig(..) used without a sigma context")]
    NoSigmaContext,
    #[error("config error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
