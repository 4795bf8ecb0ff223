use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("self-loop on vertex {vertex}")]
    SelfLoop { vertex: usize },
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("missing DIMACS `p edge` header")]
    MissingHeader,
    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
    #[error("graph invariant violated: {0}")]
    Invariant(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RleError {
    #[error("non-canonical run-length sequence {0:?}")]
    NonCanonical(Vec<u32>),
    #[error("ordering is not a permutation of the vertex set")]
    NotPermutation,
    #[error("vertex {0} is not a row of the matrix")]
    MissingVertex(usize),
    #[error("matrix is empty")]
    Empty,
    #[error("restore record inconsistent with matrix: {0}")]
    Corrupt(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderingError {
    #[error("shift of {shift} at position {pos} is out of range")]
    ShiftOutOfRange { pos: usize, shift: usize },
    #[error("vertex {0} not in ordering")]
    MissingVertex(usize),
    #[error("orderings cover different vertex sets")]
    DifferentSets,
    #[error("re-insertion collides at position {0}")]
    PositionCollision(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumError {
    #[error(transparent)]
    Rle(#[from] RleError),
    #[error(transparent)]
    Ordering(#[from] OrderingError),
    #[error("rollback mismatch at depth {depth}: {what}")]
    RollbackMismatch { depth: usize, what: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StreamError {
    #[error("diff {index} pops {pop} but only {size} vertices are in the solution")]
    PopTooLarge { index: usize, pop: usize, size: usize },
    #[error("stream does not start with the empty set")]
    MissingEmptySet,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("truncated binary stream")]
    Truncated,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("graph has {n} vertices, oracle limit is {limit}")]
pub struct OracleLimit {
    pub n: usize,
    pub limit: usize,
}
