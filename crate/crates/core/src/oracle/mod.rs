//! Distance oracles and their shared query/space vocabulary.

mod engine;
pub mod recursive;
pub mod schedule;
pub mod simple;

use std::fmt;

use crate::graph::VertexId;

pub use engine::BuildAudit;
pub use recursive::{build_recursive, RecursiveOracle};
pub use schedule::{make_schedule, ParameterSchedule, ScheduleMode, DEFAULT_LEAF};
pub use simple::{build_simple, default_r, SimpleOracle};

/// Either oracle, as loaded from a file.
#[derive(Clone, Debug)]
pub enum AnyOracle {
    Simple(SimpleOracle),
    Recursive(RecursiveOracle),
}

impl AnyOracle {
    /// Decodes an oracle file of either kind, chosen by its header line.
    pub fn from_bytes(bytes: &[u8]) -> crate::Result<Self> {
        if bytes.starts_with(simple::SIMPLE_HEADER.as_bytes()) {
            SimpleOracle::from_bytes(bytes).map(AnyOracle::Simple)
        } else if bytes.starts_with(recursive::RECURSIVE_HEADER.as_bytes()) {
            RecursiveOracle::from_bytes(bytes).map(AnyOracle::Recursive)
        } else {
            Err(crate::Error::Format("unknown oracle header".into()))
        }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        match self {
            AnyOracle::Simple(o) => o.to_bytes(),
            AnyOracle::Recursive(o) => o.to_bytes(),
        }
    }

    pub fn as_dyn(&self) -> &dyn DistanceOracle {
        match self {
            AnyOracle::Simple(o) => o,
            AnyOracle::Recursive(o) => o,
        }
    }

    /// Levels below the root: 1 for the simple oracle.
    pub fn depth(&self) -> usize {
        match self {
            AnyOracle::Simple(_) => 1,
            AnyOracle::Recursive(o) => o.depth(),
        }
    }
}

/// Common interface of the exact oracles.
pub trait DistanceOracle: Sync {
    fn vertex_count(&self) -> usize;

    /// Exact distance; panics on out-of-range ids.
    fn query(&self, s: VertexId, t: VertexId) -> u32;

    fn query_traced(&self, s: VertexId, t: VertexId) -> (u32, QueryTrace);

    fn space_report(&self) -> SpaceReport;

    /// Checked variant of [`DistanceOracle::query`].
    fn try_query(&self, s: VertexId, t: VertexId) -> crate::Result<u32> {
        let n = self.vertex_count();
        for v in [s, t] {
            if v as usize >= n {
                return Err(crate::Error::VertexOutOfRange { vertex: v as u64, n });
            }
        }
        Ok(self.query(s, t))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    /// Distance read from a region's all-pairs table.
    AllPairs,
    /// Pattern and canonical distance of `s` for a child region.
    VertexPattern,
    /// Induced pattern for the next region down.
    InducedPattern,
    /// Final pattern-to-vertex row lookup.
    PatternRow,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub kind: StepKind,
    pub level: usize,
    pub region: u32,
    /// Global pattern id after this step, if any.
    pub pattern: Option<u32>,
    /// Canonical vertex of the pattern's hole.
    pub canonical: Option<VertexId>,
    /// Accumulated distance after this step.
    pub accumulated: i64,
}

/// Record of the table reads performed by one query.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QueryTrace {
    pub steps: Vec<TraceStep>,
    pub lookups: usize,
}

impl QueryTrace {
    pub fn step_count(&self) -> usize {
        self.steps.len()
    }
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} level={} region={}", self.kind, self.level, self.region)?;
        if let Some(p) = self.pattern {
            write!(f, " pattern={p}")?;
        }
        if let Some(v) = self.canonical {
            write!(f, " canonical={v}")?;
        }
        write!(f, " d={}", self.accumulated)
    }
}

impl fmt::Display for QueryTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            writeln!(f, "step {i}: {s}")?;
        }
        write!(f, "lookups: {}", self.lookups)
    }
}

/// Stored-word census of an oracle, one entry per table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceReport {
    pub oracle: &'static str,
    pub items: Vec<(&'static str, u64)>,
    /// Navigation data (offsets, region topology, hole descriptors).
    pub index_words: u64,
}

impl SpaceReport {
    /// Sum of the item tables.
    pub fn total(&self) -> u64 {
        self.items.iter().map(|(_, w)| w).sum()
    }

    pub fn item(&self, name: &str) -> Option<u64> {
        self.items.iter().find(|(n, _)| *n == name).map(|&(_, w)| w)
    }
}
