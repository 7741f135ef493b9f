use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot evaluate a negative power at a zero base")]
    ZeroBase,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("inverse entry is not a Laurent polynomial (denominator {0})")]
    NonLaurentEntry(String),
    #[error("not a partition of [{n}]: {reason}")]
    NotAPartition { n: usize, reason: String },
    #[error("partition is crossing: {0}")]
    Crossing(String),
    #[error("n = {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("not a noncrossing permutation: {0}")]
    NotNoncrossingPermutation(String),
    #[error("complement is not noncrossing: {0}")]
    ComplementNotNoncrossing(String),
    #[error("product is not a noncrossing simple product: {0}")]
    ProductNotNoncrossing(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("edges share no endpoint")]
    NoSharedEndpoint,
    #[error("edges are identical")]
    IdenticalEdges,
    #[error("edge norm vector has a non-positive entry at position {0}")]
    NonPositiveEntry(usize),
    #[error("degenerate simplex")]
    DegenerateInput,
    #[error("blocks do not form a spanning hypertree: {0}")]
    NotHypertree(String),
    #[error("token {0} is not supported in this representation")]
    UnsupportedToken(String),
    #[error("sliding produced a non-noncrossing factor: {0}")]
    SlidingFailure(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Errors that indicate a broken internal invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::ComplementNotNoncrossing(_) | Error::NonLaurentEntry(_) | Error::SlidingFailure(_)
        )
    }
}
