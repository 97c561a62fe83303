use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown subsystem label `{0}`")]
    UnknownLabel(String),

    #[error("subsystem label `{0}` appears more than once")]
    DuplicateLabel(String),

    #[error("subsystem `{0}` has dimension zero")]
    ZeroDimension(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operands live on different Hilbert spaces")]
    SpaceMismatch,

    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("non-finite amplitude or matrix entry")]
    NonFinite,

    #[error("state is not normalized (norm squared = {0})")]
    NotNormalized(f64),

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("state has weight {0:e} outside the one-photon sector")]
    OutsideOnePhotonSector(f64),

    #[error("closed form is singular: {0}")]
    DegenerateClosedForm(String),

    #[error("closed form is inconsistent: |delta| = {0} exceeds 1")]
    ClosedFormInconsistency(f64),

    #[error("numerical invariant violated: {0}")]
    Numerical(String),

    #[error("unknown canonical state `{0}` (expected ghz4, w4, cl4 or d4)")]
    UnknownState(String),
}
