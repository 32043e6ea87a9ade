use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{p} is not a prime")]
    NotPrime { p: u64 },

    #[error("unknown variable `{name}` at offset {offset}")]
    UnknownVariable { name: String, offset: usize },

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("operands belong to different rings")]
    MixedRings,

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("generator `{0}` has a nonzero constant term")]
    ConstantTerm(String),

    #[error("the ring is zero: 1 lies in the ideal of relations")]
    ZeroRing,

    #[error("truncation order {order} too small: {needed}")]
    TruncationTooSmall { order: usize, needed: String },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("ideal is not m-primary within truncation order {order}: {what}")]
    NotMPrimary { order: usize, what: String },

    #[error("not filter-regular: {0}")]
    NotFilterRegular(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
