use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("adjacency matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("not a permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid incidence structure: {0}")]
    InvalidPlane(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("residue {residue} is not reduced modulo {prime}")]
    ResidueOutOfRange { residue: u64, prime: u64 },

    #[error("matrix is singular modulo {0}")]
    Singular(u32),

    #[error("index pair ({0}, {0}) needs two distinct indices")]
    SameIndex(usize),

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("unsupported plane order {0}: need a prime power no larger than 32")]
    UnsupportedOrder(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("brute-force search is capped at {cap} vertices, got {n}")]
    SizeCap { n: usize, cap: usize },
}
