use thiserror::Error;

/// Errors surfaced by the sampling structures, graph store and harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate distribution: all biases are zero")]
    DegenerateDistribution,
    #[error("invalid bias: {0}")]
    InvalidBias(f64),
    #[error("lambda overflow: {bias} * {lambda} exceeds the integer bias range")]
    LambdaOverflow { bias: f64, lambda: f64 },
    #[error("zero bias edge")]
    ZeroBiasEdge,
    #[error("empty vertex")]
    EmptyVertex,
    #[error("no such edge")]
    NoSuchEdge,
    #[error("unknown vertex {0}")]
    UnknownVertex(u32),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("workload infeasible: {0}")]
    WorkloadInfeasible(String),
    #[error("distribution length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("bin too small: expected count {0} below 5")]
    BinTooSmall(f64),
    #[error("invalid delete positions")]
    InvalidPositions,
    #[error("invalid batch: {0}")]
    InvalidBatch(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
