//! Recursive oracle: nested r-divisions with patterns handed down level by
//! level through induced patterns.
//!
//! A query finds the deepest level whose region holds both endpoints, takes
//! the pattern of s on the hole of t's child region that contains s, then
//! follows induced patterns down t's chain while accumulating the distance to
//! the current canonical vertex, and finishes with a pattern-to-vertex row at
//! t's leaf.

use crate::codec::{Decoder, Encoder};
use crate::decomposition::{recursive_r_division, RegionId};
use crate::error::{Error, Result};
use crate::graph::{EmbeddedGraph, VertexId};
use crate::oracle::engine::{BuildAudit, Engine};
use crate::oracle::schedule::{ParameterSchedule, ScheduleMode};
use crate::oracle::{DistanceOracle, QueryTrace, SpaceReport};

pub const RECURSIVE_HEADER: &str = "pdo-rec v1";

#[derive(Clone, Debug, PartialEq)]
pub struct RecursiveOracle {
    schedule: ParameterSchedule,
    m: usize,
    engine: Engine,
    audit: BuildAudit,
}

pub fn build_recursive(graph: &EmbeddedGraph, schedule: &ParameterSchedule) -> Result<RecursiveOracle> {
    if graph.vertex_count() == 0 || !graph.is_connected() {
        return Err(Error::DisconnectedInput {
            components: graph.component_count(),
        });
    }
    let tree = recursive_r_division(graph, &schedule.levels)?;
    let (engine, audit) = Engine::build(graph, &tree)?;
    Ok(RecursiveOracle {
        schedule: schedule.clone(),
        m: graph.edge_count(),
        engine,
        audit,
    })
}

impl RecursiveOracle {
    pub fn schedule(&self) -> &ParameterSchedule {
        &self.schedule
    }

    /// Number of levels below the root (k).
    pub fn depth(&self) -> usize {
        self.engine.depth
    }

    pub fn region_count(&self) -> usize {
        self.engine.region_parent.len()
    }

    pub fn pattern_count(&self) -> usize {
        self.engine.pattern_hole.len()
    }

    pub fn audit(&self) -> BuildAudit {
        self.audit
    }

    /// Item-2 tuple (pattern id, dist(u, v_h)) of `u` for region `region`.
    pub fn vertex_tuple(&self, region: RegionId, u: VertexId) -> Option<(u32, u32)> {
        self.engine.item2(region, u)
    }

    /// Item-3 tuple (induced pattern id, dist(p, v_h')) of pattern `p` for
    /// the child region `child`.
    pub fn pattern_tuple(&self, p: u32, child: RegionId) -> Option<(u32, i32)> {
        self.engine.item3(p, child)
    }

    /// Region and canonical vertex of the hole owning pattern `p`.
    pub fn pattern_owner(&self, p: u32) -> Option<(RegionId, VertexId)> {
        let h = *self.engine.pattern_hole.get(p as usize)? as usize;
        Some((self.engine.hole_region(h), self.engine.hole_canonical[h]))
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut enc = Encoder::new(RECURSIVE_HEADER);
        enc.u64(self.m as u64);
        enc.f64(self.schedule.epsilon);
        enc.u64(match self.schedule.mode {
            ScheduleMode::Geometric => 0,
            ScheduleMode::Aggressive => 1,
        });
        enc.u64(self.schedule.leaf as u64);
        let levels: Vec<u64> = self.schedule.levels.iter().map(|&r| r as u64).collect();
        enc.u64s(&levels);
        self.engine.encode(&mut enc);
        enc.finish()
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut dec = Decoder::new(bytes, RECURSIVE_HEADER)?;
        let m = dec.u64()? as usize;
        let epsilon = dec.f64()?;
        let mode = match dec.u64()? {
            0 => ScheduleMode::Geometric,
            1 => ScheduleMode::Aggressive,
            other => return Err(Error::Format(format!("unknown schedule mode {other}"))),
        };
        let leaf = dec.u64()? as usize;
        let levels = dec.u64s()?.into_iter().map(|r| r as usize).collect::<Vec<_>>();
        let engine = Engine::decode(&mut dec)?;
        dec.finish()?;
        if engine.depth != levels.len() {
            return Err(Error::Format("schedule length does not match tree depth".into()));
        }
        Ok(RecursiveOracle {
            schedule: ParameterSchedule {
                epsilon,
                mode,
                leaf,
                levels,
            },
            m,
            engine,
            audit: BuildAudit::default(),
        })
    }

    #[doc(hidden)]
    pub fn corrupt_one_entry(&mut self) -> bool {
        self.engine.corrupt_one_entry()
    }
}

impl DistanceOracle for RecursiveOracle {
    fn vertex_count(&self) -> usize {
        self.engine.n
    }

    fn query(&self, s: VertexId, t: VertexId) -> u32 {
        self.engine.query(s, t, None)
    }

    fn query_traced(&self, s: VertexId, t: VertexId) -> (u32, QueryTrace) {
        let mut trace = QueryTrace::default();
        let d = self.engine.query(s, t, Some(&mut trace));
        (d, trace)
    }

    fn space_report(&self) -> SpaceReport {
        let e = &self.engine;
        SpaceReport {
            oracle: "recursive",
            items: vec![
                ("item_1", e.membership_words()),
                ("item_2", (e.item2_pattern.len() + e.item2_dist.len()) as u64),
                ("item_3", (e.item3_pattern.len() + e.item3_dist.len()) as u64),
                ("leaf_rows", e.rows.len() as u64),
                ("leaf_all_pairs", e.apsp.len() as u64),
            ],
            index_words: e.index_words(false),
        }
    }
}
