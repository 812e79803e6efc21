use thiserror::Error;

/// Errors raised by the cone, fan and root machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected rank {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the zero vector has no primitive generator")]
    ZeroVector,
    #[error("cone is not strongly convex (lineality rank {lineality})")]
    NonStronglyConvex { lineality: usize },
    #[error("cones {first} and {second} meet outside a common face")]
    BadIntersection { first: usize, second: usize },
    #[error("fan is not quasi-affine: {0}")]
    NotQuasiAffine(String),
    #[error("{0} is not an extremal ray of the cone")]
    NotExtremalRay(String),
    #[error("cone is not a face of the ambient cone")]
    NotAFace,
    #[error("exponent {0} lies outside the dual cone")]
    ExponentOutsideCone(String),
    #[error("{0} is not a Demazure root: {1}")]
    InvalidRoot(String, String),
    #[error("unsupported piece: {0}")]
    UnsupportedPiece(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("malformed weight set: {0}")]
    MalformedWeightSet(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
