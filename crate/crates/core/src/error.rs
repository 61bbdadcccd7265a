use thiserror::Error;

use crate::surface::{DivisorClass, SurfaceBase};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("base mismatch: {left} vs {right}")]
    BaseMismatch { left: SurfaceBase, right: SurfaceBase },

    #[error("{class} is not very ample on {base}")]
    NotVeryAmple { base: SurfaceBase, class: DivisorClass },

    #[error("ambient dimension {0} is below 2")]
    AmbientDimension(i128),

    #[error("hypothesis audit failed: {}", .failing.join(", "))]
    AuditFailed { failing: Vec<String> },

    #[error("identical lines l({0})")]
    IdenticalLines(u64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
