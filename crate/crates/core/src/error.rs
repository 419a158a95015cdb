use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid skeleton: s = {s} must satisfy 0 <= s <= N = {n}")]
    InvalidSkeleton { n: usize, s: i64 },
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("multiplicity r = {0} must be at least 2")]
    InvalidMultiplicity(usize),
    #[error("deleted product would have at least {count} cells, above the cap of {cap}")]
    CapExceeded { count: u128, cap: u64 },
    #[error("cell {0} is not a 0-cell of this deleted product")]
    UnknownCell(String),
    #[error("boundary matrices do not compose to zero in degree {0}")]
    NotAChainComplex(usize),
    #[error("empty complex")]
    EmptyComplex,
    #[error("shape mismatch: {0}")]
    ShapeError(String),
    #[error("expected {expected} points, got {got}")]
    WrongCardinality { expected: usize, got: usize },
    #[error("search exhausted without a certified partition; this is a bug")]
    SearchInvariantViolated,
    #[error("map is not in general position: {0}")]
    NotGeneric(String),
    #[error("table is not consistent with the twisted action: {0}")]
    NotEquivariant(String),
    #[error("cochain has degree {got}, expected {expected}")]
    DegreeError { expected: usize, got: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("group acts transitively; no invariant split exists")]
    NoSplit,
    #[error("all input points coincide")]
    DiagonalInput,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
