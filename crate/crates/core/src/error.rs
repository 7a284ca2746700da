use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Coarse classification used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// The caller supplied something malformed.
    Usage,
    /// A computation outgrew its configured bound.
    ResourceLimit,
    /// An internal invariant broke; this is a bug, not bad input.
    Internal,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("expected a positive integer, got {0}")]
    NonPositive(i64),
    #[error("matrix is not square ({rows} rows, row {row} has {cols} entries)")]
    NotSquare {
        rows: usize,
        row: usize,
        cols: usize,
    },
    #[error("expected a {expected}x{expected} matrix, got {found} rows")]
    Dimension { expected: usize, found: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid group signature: {0}")]
    InvalidSignature(String),
    #[error("matrix is not a member of the fundamental lattice: {0}")]
    NotAMember(String),
    #[error("invalid group element: {0}")]
    InvalidElement(String),
    #[error("relation is not a partial order: {0}")]
    InvalidOrder(String),
    #[error("poset is not a lattice: elements {0} and {1} have no unique {2}")]
    NotALattice(usize, usize, &'static str),
    #[error("group order {order} exceeds the oracle bound {bound}")]
    ResourceLimit { order: u64, bound: u64 },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::ResourceLimit { .. } => ErrorKind::ResourceLimit,
            Error::InvalidOrder(_) | Error::NotALattice(..) | Error::Internal(_) => {
                ErrorKind::Internal
            }
            _ => ErrorKind::Usage,
        }
    }
}
