use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("degenerate input: {0}")]
    Degenerate(&'static str),
    #[error("order {n} exceeds the supported cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("vertex {v} out of range for order {n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge {0}-{1} already present")]
    EdgeExists(usize, usize),
    #[error("edge {0}-{1} not present")]
    MissingEdge(usize, usize),
    #[error("not a permutation of the vertex set")]
    BadPermutation,
    #[error("invalid parameters: {0}")]
    Params(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {byte:#04x} at offset {offset} is outside 63..=126")]
    ByteOutOfRange { byte: u8, offset: usize },
    #[error("expected {expected} bytes for order {n}, found {found}")]
    BadLength {
        n: usize,
        expected: usize,
        found: usize,
    },
    #[error("unsupported order: {0}")]
    UnsupportedSize(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("spectral radius of the null graph is undefined")]
    NullGraph,
    #[error("tolerance must be positive and finite, got {0}")]
    BadTolerance(f64),
    #[error("infeasible parameters n={n}, m={m}, delta={delta}: negative radicand")]
    InfeasibleBound { n: usize, m: usize, delta: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("S and T overlap at vertex {0}")]
    Overlap(usize),
    #[error("vertex {v} out of range for order {n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("k = {k} is below the supported minimum {min}")]
    DegreeTooSmall { k: usize, min: usize },
    #[error("order {n} exceeds the exhaustive search cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("minimum degree {min_degree} is below k = {k}")]
    BelowMinDegree { min_degree: usize, k: usize },
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("certificate search and matching disagree: {0}")]
    Inconsistent(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("order mismatch: graph has {graph} vertices, reference has {reference}")]
    OrderMismatch { graph: usize, reference: usize },
    #[error("parameters outside the theorem range: {0}")]
    OutOfRange(String),
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Factor(#[from] FactorError),
}
