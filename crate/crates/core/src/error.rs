use thiserror::Error;

use crate::graph::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: u64, n: usize },
    #[error("vertex {u} lists {v} as a neighbor but {v} does not list {u}")]
    AsymmetricAdjacency { u: VertexId, v: VertexId },
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("parallel edge between {u} and {v}")]
    ParallelEdge { u: VertexId, v: VertexId },
    #[error(
        "Euler relation violated in component of vertex {root}: \
         {vertices} - {edges} + {faces} != 2"
    )]
    EulerViolation {
        root: VertexId,
        vertices: usize,
        edges: usize,
        faces: usize,
    },
    #[error("canonical vertex of an empty set")]
    EmptySet,
    #[error("{family} dimensions must be positive (got {rows}x{cols})")]
    ZeroDimension {
        family: &'static str,
        rows: usize,
        cols: usize,
    },
    #[error("random planar graphs need at least 3 vertices (got {0})")]
    TooFewVertices(usize),
    #[error("input graph is disconnected ({components} components)")]
    DisconnectedInput { components: usize },
    #[error("division parameter r = {r} is outside [1, {n}]")]
    InvalidDivisionParameter { r: usize, n: usize },
    #[error("schedule must be strictly decreasing and within [1, {n}]: {schedule:?}")]
    NonDecreasingSchedule { schedule: Vec<usize>, n: usize },
    #[error("vertex {vertex} cannot reach the region")]
    UnreachableComponent { vertex: VertexId },
    #[error(
        "attachments of the component of vertex {vertex} point into different faces; \
         the rotation system is not a planar embedding"
    )]
    InconsistentEmbedding { vertex: VertexId },
    #[error("pattern entry {value} at position {index} is outside {{-1, 0, 1}}")]
    EntryOutOfRange { index: usize, value: i64 },
    #[error("epsilon must lie in (0, 1], got {0}")]
    EpsilonOutOfRange(f64),
    #[error("leaf threshold must be at least 2, got {0}")]
    InvalidLeafThreshold(usize),
    #[error("malformed input at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("malformed oracle file: {0}")]
    Format(String),
    #[error(
        "oracle mismatch for ({s}, {t}): got {got}, want {want}{}",
        trace.as_deref().map(|t| format!("\n{t}")).unwrap_or_default()
    )]
    Mismatch {
        s: VertexId,
        t: VertexId,
        got: u32,
        want: u32,
        trace: Option<String>,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
