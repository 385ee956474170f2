//! BFS ground truth and the oracle equivalence harness.

use std::collections::{HashMap, VecDeque};
use std::io::Write;
use std::sync::{Arc, Mutex};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{EmbeddedGraph, VertexId, INF};
use crate::oracle::DistanceOracle;

/// Graphs up to this size get a full distance table.
pub const FULL_TABLE_LIMIT: usize = 3000;
const CACHE_ROWS: usize = 4096;

#[derive(Debug)]
enum Storage {
    Table(Vec<u32>),
    Cached(Mutex<HashMap<VertexId, Arc<Vec<u32>>>>),
}

/// Exact hop distances by breadth-first search.
#[derive(Debug)]
pub struct BruteOracle {
    graph: Arc<EmbeddedGraph>,
    storage: Storage,
}

impl BruteOracle {
    pub fn new(graph: Arc<EmbeddedGraph>) -> Self {
        let n = graph.vertex_count();
        let storage = if n <= FULL_TABLE_LIMIT {
            let mut table = vec![INF; n * n];
            table.par_chunks_mut(n.max(1)).enumerate().for_each_init(VecDeque::new, |queue, (s, row)| {
                graph.bfs_into(s as VertexId, row, queue);
            });
            Storage::Table(table)
        } else {
            Storage::Cached(Mutex::new(HashMap::new()))
        };
        BruteOracle { graph, storage }
    }

    pub fn graph(&self) -> &EmbeddedGraph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn has_table(&self) -> bool {
        matches!(self.storage, Storage::Table(_))
    }

    /// Distances from `s` to every vertex.
    pub fn row(&self, s: VertexId) -> Arc<Vec<u32>> {
        let n = self.vertex_count();
        match &self.storage {
            Storage::Table(t) => Arc::new(t[s as usize * n..(s as usize + 1) * n].to_vec()),
            Storage::Cached(cache) => {
                if let Some(row) = cache.lock().unwrap().get(&s) {
                    return row.clone();
                }
                let row = Arc::new(self.graph.bfs_distances(s).dist);
                let mut cache = cache.lock().unwrap();
                if cache.len() >= CACHE_ROWS {
                    cache.clear();
                }
                cache.insert(s, row.clone());
                row
            }
        }
    }
}

pub fn brute_distance(brute: &BruteOracle, s: VertexId, t: VertexId) -> u32 {
    match &brute.storage {
        Storage::Table(table) => table[s as usize * brute.vertex_count() + t as usize],
        Storage::Cached(_) => brute.row(s)[t as usize],
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairSource {
    All,
    Sampled { count: usize, seed: u64 },
}

impl PairSource {
    /// Pairs grouped by source vertex, in a fixed order.
    fn grouped(self, n: usize) -> Vec<(VertexId, Vec<VertexId>)> {
        match self {
            PairSource::All => (0..n as VertexId).map(|s| (s, (0..n as VertexId).collect())).collect(),
            PairSource::Sampled { count, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut by_source: HashMap<VertexId, Vec<VertexId>> = HashMap::new();
                for _ in 0..count {
                    let s = rng.gen_range(0..n as VertexId);
                    let t = rng.gen_range(0..n as VertexId);
                    by_source.entry(s).or_default().push(t);
                }
                let mut groups: Vec<_> = by_source.into_iter().collect();
                groups.sort_unstable_by_key(|g| g.0);
                groups
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub pairs: u64,
    pub mismatches: u64,
    pub max_trace: usize,
    pub max_lookups: usize,
    pub seconds: f64,
}

impl VerifyReport {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["pairs", "mismatches", "max_trace", "max_lookups", "seconds"])?;
        w.write_record([
            self.pairs.to_string(),
            self.mismatches.to_string(),
            self.max_trace.to_string(),
            self.max_lookups.to_string(),
            format!("{:.6}", self.seconds),
        ])?;
        w.flush()?;
        Ok(())
    }
}

/// Compares `oracle` with `brute` on the given pairs. Fails with
/// [`Error::Mismatch`] carrying the trace of the first failing pair.
pub fn verify_equivalence(oracle: &dyn DistanceOracle, brute: &BruteOracle, pairs: PairSource) -> Result<VerifyReport> {
    let n = brute.vertex_count();
    if oracle.vertex_count() != n {
        return Err(Error::Format(format!(
            "oracle has {} vertices, graph has {n}",
            oracle.vertex_count()
        )));
    }
    let start = Instant::now();
    let groups = pairs.grouped(n);
    let results: Vec<_> = groups
        .par_iter()
        .map(|(s, targets)| {
            let row = brute.row(*s);
            let (mut max_trace, mut max_lookups, mut first, mut bad) = (0, 0, None, 0u64);
            for &t in targets {
                let (got, trace) = oracle.query_traced(*s, t);
                max_trace = max_trace.max(trace.step_count());
                max_lookups = max_lookups.max(trace.lookups);
                let want = row[t as usize];
                if got != want {
                    bad += 1;
                    if first.is_none() {
                        first = Some(Error::Mismatch {
                            s: *s,
                            t,
                            got,
                            want,
                            trace: Some(trace.to_string()),
                        });
                    }
                }
            }
            (targets.len() as u64, max_trace, max_lookups, bad, first)
        })
        .collect();
    let mut report = VerifyReport {
        pairs: 0,
        mismatches: 0,
        max_trace: 0,
        max_lookups: 0,
        seconds: 0.0,
    };
    let mut first = None;
    for (count, steps, lookups, bad, err) in results {
        report.pairs += count;
        report.max_trace = report.max_trace.max(steps);
        report.max_lookups = report.max_lookups.max(lookups);
        report.mismatches += bad;
        if first.is_none() {
            first = err;
        }
    }
    report.seconds = start.elapsed().as_secs_f64();
    match first {
        Some(err) => {
            log::error!("{} of {} pairs mismatched", report.mismatches, report.pairs);
            Err(err)
        }
        None => Ok(report),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_grid, gen_random_planar};
    use crate::oracle::{build_recursive, build_simple, make_schedule, ScheduleMode};

    #[test]
    fn trivial_distances() {
        let brute = BruteOracle::new(Arc::new(gen_grid(3, 3).unwrap()));
        assert_eq!(brute_distance(&brute, 4, 4), 0);
        assert_eq!(brute_distance(&brute, 0, 8), 4);
    }

    #[test]
    fn table_is_a_metric() {
        let g = Arc::new(gen_random_planar(500, 3).unwrap());
        let brute = BruteOracle::new(g.clone());
        assert!(brute.has_table());
        for s in 0..500 {
            assert_eq!(brute_distance(&brute, s, s), 0);
            for t in 0..500 {
                assert_eq!(brute_distance(&brute, s, t), brute_distance(&brute, t, s));
            }
            // one hop changes the distance from s by at most one
            for &[u, v] in g.edges() {
                assert!(brute_distance(&brute, s, u).abs_diff(brute_distance(&brute, s, v)) <= 1);
            }
        }
        for _ in 0..200 {
            let (a, b, c) = (fastrand(0), fastrand(1), fastrand(2));
            assert!(brute_distance(&brute, a, c) <= brute_distance(&brute, a, b) + brute_distance(&brute, b, c));
        }
    }

    fn fastrand(i: u64) -> VertexId {
        ChaCha8Rng::seed_from_u64(i).gen_range(0..500)
    }

    #[test]
    fn cached_mode_agrees_with_bfs() {
        let g = Arc::new(gen_grid(60, 60).unwrap());
        let brute = BruteOracle::new(g.clone());
        assert!(!brute.has_table());
        assert_eq!(brute_distance(&brute, 0, 3599), 118);
        assert_eq!(brute_distance(&brute, 61, 0), 2);
    }

    #[test]
    fn both_oracles_verify() {
        let g = Arc::new(gen_random_planar(250, 9).unwrap());
        let brute = BruteOracle::new(g.clone());
        let simple = build_simple(&g, 8).unwrap();
        let rep = verify_equivalence(&simple, &brute, PairSource::All).unwrap();
        assert_eq!(rep.pairs, 250 * 250);
        assert!(rep.max_lookups <= 6);
        let sched = make_schedule(250, 0.25, ScheduleMode::Geometric, 4).unwrap();
        let rec = build_recursive(&g, &sched).unwrap();
        let rep = verify_equivalence(&rec, &brute, PairSource::Sampled { count: 5000, seed: 1 }).unwrap();
        assert_eq!(rep.pairs, 5000);
        assert!(rep.max_trace <= sched.depth() + 2);
        let mut buf = Vec::new();
        rep.write_csv(&mut buf).unwrap();
        assert!(String::from_utf8(buf).unwrap().starts_with("pairs,mismatches,max_trace,max_lookups,seconds\n5000,0,"));
    }

    #[test]
    fn corrupted_entry_is_reported_with_trace() {
        let g = Arc::new(gen_grid(12, 12).unwrap());
        let brute = BruteOracle::new(g.clone());
        let sched = make_schedule(144, 0.25, ScheduleMode::Geometric, 4).unwrap();
        let mut rec = build_recursive(&g, &sched).unwrap();
        assert!(rec.corrupt_one_entry());
        match verify_equivalence(&rec, &brute, PairSource::All) {
            Err(Error::Mismatch { got, want, trace, .. }) => {
                assert_ne!(got, want);
                assert!(trace.is_some_and(|t| !t.is_empty()));
            }
            other => panic!("expected a mismatch, got {other:?}"),
        }
    }
}
