use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension {0} is outside the supported range 1..=16")]
    UnsupportedDimension(usize),
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("expected {expected} coordinates, got {found}")]
    CoordinateCount { expected: usize, found: usize },
    #[error("coordinate {0} is not 0 or 1")]
    NonBinaryCoordinate(i64),
    #[error("point value {value} does not fit in {dim} bits")]
    PointOutOfRange { value: u32, dim: usize },
    #[error("polytope has no vertices")]
    EmptyPolytope,
    #[error("vertex list is not strictly increasing")]
    UnsortedVertices,
    #[error("point {0} is not a vertex of the polytope")]
    NotAVertex(u32),
    #[error("point {0} is already a vertex of the polytope")]
    AlreadyAVertex(u32),
    #[error("edge endpoints must differ")]
    DegenerateEdge,
    #[error("empty input")]
    EmptyInput,
    #[error("polytope is not full-dimensional (affine rank {rank} < {dim})")]
    NotFullDimensional { rank: usize, dim: usize },
    #[error("vertex {vertex} violates facet {facet}")]
    InconsistentIncidence { facet: usize, vertex: usize },
    #[error("{0} vertices exceed the supported maximum of {1}")]
    TooManyVertices(usize, usize),
    #[error("invalid vertex index {0}")]
    InvalidVertexIndex(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("level file {path}: {reason}")]
    Format { path: PathBuf, reason: String },
    #[error("level {level} aborted after {candidates} candidates (cap {cap})")]
    CandidateCap {
        level: usize,
        candidates: u64,
        cap: u64,
    },
    #[error("parse error on line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}
