use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground set of {0} points exceeds the supported maximum of {max}", max = crate::MAX_POINTS)]
    TooManyPoints(usize),
    #[error("ground set must contain at least one point")]
    EmptyGround,
    #[error("duplicate point name `{0}`")]
    DuplicatePoint(String),
    #[error("unknown point name `{0}`")]
    UnknownPoint(String),
    #[error("mask {bits:#x} uses bits outside a ground set of {n} points")]
    MaskOutOfRange { bits: u32, n: usize },
    #[error("operands live on different ground sets ({left} vs {right} points)")]
    GroundMismatch { left: usize, right: usize },
    #[error("point `{0}` is not in its own point-limit set")]
    NotCentered(String),
    #[error("relation is not a map: point {0} has {1} images")]
    NotAMap(usize, usize),
    #[error("map is not surjective: point {0} of the codomain has no preimage")]
    NotSurjective(usize),
    #[error("cascade exceeds the node cap of {max} nodes", max = crate::cascade::MAX_NODES)]
    NodeCap,
    #[error("malformed cascade: {0}")]
    InvalidCascade(String),
    #[error("class `{inner}` is not included in `{outer}`")]
    ClassInclusion { inner: String, outer: String },
    #[error("cannot parse filter class `{0}`")]
    ClassSyntax(String),
    #[error("internal error: {0}")]
    Internal(String),
}
