//! Exact distance oracles for unweighted planar graphs built from
//! boundary-walk patterns.

pub mod baseline;
mod codec;
pub mod decomposition;
pub mod error;
pub mod generators;
pub mod graph;
pub mod oracle;
pub mod patterns;
pub mod stats;

pub use decomposition::{
    assign_inside_hole, identify_holes, r_division, recursive_r_division, DecompositionTree, Hole, InsideMap,
    LevelStats, Region, RegionId,
};
pub use error::{Error, Result};
pub use generators::{gen_grid, gen_random_planar, gen_random_planar_with, gen_triangulated_grid, GenSpec};
pub use graph::{canonical_vertex, DistanceRow, EdgeId, EmbeddedGraph, FacialWalk, VertexId, INF};
pub use oracle::{
    build_recursive, build_simple, default_r, AnyOracle, BuildAudit, make_schedule, DistanceOracle, ParameterSchedule, QueryTrace,
    RecursiveOracle, ScheduleMode, SimpleOracle, SpaceReport, StepKind, TraceStep, DEFAULT_LEAF,
};
pub use patterns::{
    count_distinct_patterns, dist_pattern_to_vertex, induced_pattern, pattern_census, pattern_envelope,
    pattern_of_vertex, Pattern, PatternCensus, PatternId, PatternRegistry, WalkDistances,
};
pub use baseline::{brute_distance, verify_equivalence, BruteOracle, PairSource, VerifyReport};
