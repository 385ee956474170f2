//! Flat oracle over a single r-division.
//!
//! For every region R and vertex u outside R it stores the pattern of u on
//! the hole of R containing u and dist(u, v_h); for every pattern, its
//! distances to all vertices of the region; and per-region all-pairs tables.
//! A query for s, t in no common region returns
//! dist(s, v_h) + dist(p_h(s), t) using t's region.

use crate::codec::{Decoder, Encoder};
use crate::decomposition::{recursive_r_division, RegionId};
use crate::error::{Error, Result};
use crate::graph::{EmbeddedGraph, VertexId};
use crate::oracle::engine::{BuildAudit, Engine};
use crate::oracle::{DistanceOracle, QueryTrace, SpaceReport};

pub const SIMPLE_HEADER: &str = "pdo-simple v1";

/// `ceil(n^(1/4))`, the size minimizing n^2/r + n r^3.
pub fn default_r(n: usize) -> usize {
    let r = (n as f64).powf(0.25).ceil() as usize;
    // guard against rounding up past an exact fourth power
    if r > 1 && (r - 1).pow(4) >= n {
        r - 1
    } else {
        r.max(1)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimpleOracle {
    r: usize,
    m: usize,
    engine: Engine,
    audit: BuildAudit,
}

pub fn build_simple(graph: &EmbeddedGraph, r: usize) -> Result<SimpleOracle> {
    let n = graph.vertex_count();
    if n == 0 || !graph.is_connected() {
        return Err(Error::DisconnectedInput {
            components: graph.component_count(),
        });
    }
    if r == 0 || r > n {
        return Err(Error::InvalidDivisionParameter { r, n });
    }
    let tree = recursive_r_division(graph, &[r])?;
    let (engine, audit) = Engine::build(graph, &tree)?;
    Ok(SimpleOracle {
        r,
        m: graph.edge_count(),
        engine,
        audit,
    })
}

impl SimpleOracle {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn region_count(&self) -> usize {
        self.engine.region_parent.len() - 1
    }

    pub fn pattern_count(&self) -> usize {
        self.engine.pattern_hole.len()
    }

    pub fn audit(&self) -> BuildAudit {
        self.audit
    }

    /// Pattern id and dist(u, v_h) stored for `u` and the region with id
    /// `region` (1-based; 0 is the whole graph).
    pub fn vertex_tuple(&self, region: RegionId, u: VertexId) -> Option<(u32, u32)> {
        self.engine.item2(region, u)
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut enc = Encoder::new(SIMPLE_HEADER);
        enc.u64(self.r as u64);
        enc.u64(self.m as u64);
        self.engine.encode(&mut enc);
        enc.finish()
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut dec = Decoder::new(bytes, SIMPLE_HEADER)?;
        let r = dec.u64()? as usize;
        let m = dec.u64()? as usize;
        let engine = Engine::decode(&mut dec)?;
        dec.finish()?;
        if engine.depth != 1 {
            return Err(Error::Format(format!("flat oracle with depth {}", engine.depth)));
        }
        Ok(SimpleOracle {
            r,
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

impl DistanceOracle for SimpleOracle {
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
            oracle: "simple",
            items: vec![
                ("item_i", e.rows.len() as u64),
                ("item_ii", e.item2_pattern.len() as u64),
                ("item_iii", e.item2_dist.len() as u64),
                ("item_iv", e.apsp.len() as u64),
            ],
            index_words: e.index_words(true),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_grid, gen_random_planar};

    fn check_all_pairs(g: &EmbeddedGraph, o: &SimpleOracle) {
        let n = g.vertex_count() as VertexId;
        for s in 0..n {
            let row = g.bfs_distances(s);
            for t in 0..n {
                let (d, trace) = o.query_traced(s, t);
                assert_eq!(d, row.get(t), "({s}, {t})\n{trace}");
                assert!(trace.lookups <= 6, "{} lookups", trace.lookups);
            }
        }
    }

    #[test]
    fn default_r_is_fourth_root() {
        assert_eq!(default_r(16), 2);
        assert_eq!(default_r(17), 3);
        assert_eq!(default_r(10_000), 10);
        assert_eq!(default_r(1), 1);
    }

    #[test]
    fn single_region_uses_only_all_pairs() {
        let g = gen_grid(3, 3).unwrap();
        let o = build_simple(&g, 9).unwrap();
        let rep = o.space_report();
        assert_eq!(rep.item("item_i"), Some(0));
        assert_eq!(rep.item("item_ii"), Some(0));
        assert_eq!(rep.item("item_iii"), Some(0));
        assert_eq!(rep.item("item_iv"), Some(81));
        check_all_pairs(&g, &o);
    }

    #[test]
    fn grid_exact_and_complete() {
        let g = gen_grid(10, 10).unwrap();
        let o = build_simple(&g, 25).unwrap();
        check_all_pairs(&g, &o);
        let tree = recursive_r_division(&g, &[25]).unwrap();
        for &id in tree.level(1) {
            let region = tree.region(id);
            for u in 0..100 {
                assert_eq!(o.vertex_tuple(id, u).is_some(), !region.contains(u));
            }
        }
        let rep = o.space_report();
        let apsp: u64 = tree.level(1).iter().map(|&i| (tree.region(i).vertices.len() as u64).pow(2)).sum();
        assert_eq!(rep.item("item_iv"), Some(apsp));
    }

    #[test]
    fn small_cases() {
        let g = gen_grid(12, 12).unwrap();
        let o = build_simple(&g, default_r(144)).unwrap();
        check_all_pairs(&g, &o);
        let g = gen_random_planar(120, 5).unwrap();
        check_all_pairs(&g, &build_simple(&g, 10).unwrap());
        let single = EmbeddedGraph::from_rotation_system(1, vec![vec![]]).unwrap();
        assert_eq!(build_simple(&single, 1).unwrap().query(0, 0), 0);
        let edge = EmbeddedGraph::from_rotation_system(2, vec![vec![1], vec![0]]).unwrap();
        assert_eq!(build_simple(&edge, 1).unwrap().query(0, 1), 1);
    }

    #[test]
    fn rejects_bad_parameters() {
        let g = gen_grid(3, 3).unwrap();
        assert!(matches!(build_simple(&g, 0), Err(Error::InvalidDivisionParameter { .. })));
        let two = EmbeddedGraph::from_rotation_system(4, vec![vec![1], vec![0], vec![3], vec![2]]).unwrap();
        assert!(matches!(build_simple(&two, 2), Err(Error::DisconnectedInput { .. })));
        let o = build_simple(&g, 4).unwrap();
        assert!(o.try_query(0, 9).is_err());
    }

    #[test]
    fn bytes_round_trip() {
        let g = gen_random_planar(90, 2).unwrap();
        let o = build_simple(&g, 9).unwrap();
        let bytes = o.to_bytes();
        assert_eq!(bytes, build_simple(&g, 9).unwrap().to_bytes());
        let back = SimpleOracle::from_bytes(&bytes).unwrap();
        for s in 0..90 {
            for t in 0..90 {
                assert_eq!(back.query(s, t), o.query(s, t));
            }
        }
        assert!(SimpleOracle::from_bytes(&bytes[..bytes.len() - 3]).is_err());
    }
}
