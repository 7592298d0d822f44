use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
///
/// Variants split into two families: input problems (a malformed group, an
/// inconsistent surface) and internal invariant violations, which indicate a
/// bug rather than bad data. [`Error::is_internal`] tells them apart.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("multiplication is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },

    #[error("group order {order} exceeds the configured cap {cap}")]
    OrderCap { order: usize, cap: usize },

    #[error("not an automorphism: image of {a}*{b} differs from image({a})*image({b})")]
    NotAutomorphism { a: usize, b: usize },

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("unknown preset {0:?}")]
    UnknownPreset(String),

    #[error("cannot combine virtual characters of different groups")]
    MixedTables,

    #[error("index {index} out of range (len {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("integer lift failed: residue {residue} mod {prime} is not in [{lo}, {hi}]")]
    LiftOutOfRange {
        residue: u64,
        prime: u64,
        lo: i64,
        hi: i64,
    },

    #[error("invalid sheaf data: {0}")]
    InvalidSheaf(String),

    #[error("invalid surface: {0}")]
    InvalidSurface(String),

    #[error("invalid cover: {0}")]
    InvalidCover(String),

    #[error("label {0:?} is both a branch point and a bad fiber")]
    SharedLabel(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("size guard exceeded: {0}")]
    SizeGuard(String),

    #[error("cache error: {0}")]
    Cache(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}
