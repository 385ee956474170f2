//! Boundary-walk patterns: extraction, interning, pattern-to-vertex distance
//! and induced patterns.

use indexmap::IndexSet;
use rayon::prelude::*;

use crate::decomposition::{assign_inside_hole, Hole, Region, RegionId};
use crate::error::{Error, Result};
use crate::graph::{BoundedBfs, EmbeddedGraph, VertexId, INF};

/// Difference vector of distances along a hole walk, entries in {-1, 0, 1}.
/// `prefix[i]` is the sum of the first `i` entries, so `prefix[0] = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pattern {
    entries: Vec<i8>,
    prefix: Vec<i32>,
}

impl Pattern {
    pub fn new(entries: Vec<i8>) -> Result<Self> {
        if let Some(i) = entries.iter().position(|e| !(-1..=1).contains(e)) {
            return Err(Error::EntryOutOfRange {
                index: i + 1,
                value: entries[i] as i64,
            });
        }
        let mut prefix = Vec::with_capacity(entries.len() + 1);
        let mut acc = 0i32;
        prefix.push(0);
        for &e in &entries {
            acc += e as i32;
            prefix.push(acc);
        }
        Ok(Pattern { entries, prefix })
    }

    /// Pattern of consecutive differences of `dists` (one value per walk slot).
    pub fn from_walk_distances<T: Copy + Into<i64>>(dists: &[T]) -> Result<Self> {
        let entries = dists
            .windows(2)
            .enumerate()
            .map(|(i, w)| {
                let diff = w[1].into() - w[0].into();
                if (-1..=1).contains(&diff) {
                    Ok(diff as i8)
                } else {
                    Err(Error::EntryOutOfRange { index: i + 1, value: diff })
                }
            })
            .collect::<Result<Vec<i8>>>()?;
        Pattern::new(entries)
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    pub fn prefix(&self) -> &[i32] {
        &self.prefix
    }

    /// Number of entries (walk length minus one).
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `min_i walk_dist(i) + P[i]` over walk slots. May be negative: it
    /// equals `dist(u, v) - dist(u, b_0)` for any realizing `u`.
    pub fn distance_with(&self, walk_dist: impl Fn(usize) -> u32) -> i32 {
        let mut best = i32::MAX;
        for (i, &p) in self.prefix.iter().enumerate() {
            let d = walk_dist(i);
            if d != INF {
                best = best.min(d as i32 + p);
            }
        }
        best
    }
}

/// Pattern of `u` with respect to `hole`, where `dists` holds full BFS rows of
/// the hole's walk vertices (see [`WalkDistances::full`]).
pub fn pattern_of_vertex(u: VertexId, hole: &Hole, dists: &WalkDistances) -> Result<Pattern> {
    debug_assert_eq!(hole.len(), dists.walk_len());
    let column: Vec<u32> = (0..hole.len()).map(|i| dists.get(i, u as usize)).collect();
    Pattern::from_walk_distances(&column)
}

/// Distance from pattern `p` to a vertex `v`, given `walk_dists[i] = dist(b_i, v)`.
pub fn dist_pattern_to_vertex(p: &Pattern, walk_dists: &[u32]) -> i32 {
    debug_assert_eq!(p.len() + 1, walk_dists.len());
    p.distance_with(|i| walk_dists[i])
}

/// Pattern induced on `child` by a pattern, from the pattern's distances to
/// each vertex of the child's walk.
pub fn induced_pattern(child: &Hole, dist_from_p: &[i32]) -> Result<Pattern> {
    debug_assert_eq!(child.len(), dist_from_p.len());
    Pattern::from_walk_distances(dist_from_p)
}

/// BFS distances from every walk slot of a hole to a target vertex set.
#[derive(Clone, Debug)]
pub struct WalkDistances {
    slot: Vec<u32>,
    rows: Vec<Vec<u32>>,
}

impl WalkDistances {
    /// Full rows indexed by vertex id, one BFS per distinct walk vertex.
    pub fn full(graph: &EmbeddedGraph, walk: &[VertexId]) -> Self {
        let (sources, slot) = distinct_sources(walk);
        let rows = sources.par_iter().map(|&s| graph.bfs_distances(s).dist).collect();
        WalkDistances { slot, rows }
    }

    /// Rows indexed by position in the sorted list `targets`; `is_target`
    /// marks the same set over all vertices.
    pub(crate) fn bounded(
        graph: &EmbeddedGraph,
        walk: &[VertexId],
        targets: &[VertexId],
        is_target: &[bool],
        bfs: &mut BoundedBfs,
    ) -> Self {
        let (sources, slot) = distinct_sources(walk);
        let rows = sources
            .iter()
            .map(|&s| {
                let dist = bfs.run(graph, s, is_target, targets.len());
                targets.iter().map(|&t| dist[t as usize]).collect()
            })
            .collect();
        WalkDistances { slot, rows }
    }

    pub fn walk_len(&self) -> usize {
        self.slot.len()
    }

    /// Distance from walk slot `i` to the target at `index`.
    pub fn get(&self, i: usize, index: usize) -> u32 {
        self.rows[self.slot[i] as usize][index]
    }

    pub fn column_into(&self, index: usize, out: &mut Vec<u32>) {
        out.clear();
        out.extend(self.slot.iter().map(|&s| self.rows[s as usize][index]));
    }
}

fn distinct_sources(walk: &[VertexId]) -> (Vec<VertexId>, Vec<u32>) {
    let mut sources: Vec<VertexId> = walk.to_vec();
    sources.sort_unstable();
    sources.dedup();
    let slot = walk
        .iter()
        .map(|v| sources.binary_search(v).unwrap() as u32)
        .collect();
    (sources, slot)
}

/// Global handle of an interned pattern: owning hole plus dense index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PatternId {
    pub hole: u32,
    pub index: u32,
}

/// Per-hole intern table for patterns of a fixed length. Ids are dense and
/// assigned in first-seen order.
#[derive(Clone, Debug, Default)]
pub struct PatternRegistry {
    len: usize,
    keys: IndexSet<Box<[u8]>>,
}

/// Packs entries 4 per byte as `entry + 1`.
fn pack_into(entries: impl Iterator<Item = i64>, buf: &mut Vec<u8>) -> Result<()> {
    buf.clear();
    for (i, e) in entries.enumerate() {
        if !(-1..=1).contains(&e) {
            return Err(Error::EntryOutOfRange { index: i + 1, value: e });
        }
        if i % 4 == 0 {
            buf.push(0);
        }
        *buf.last_mut().unwrap() |= ((e + 1) as u8) << (2 * (i % 4));
    }
    Ok(())
}

impl PatternRegistry {
    /// Registry for patterns with `len` entries.
    pub fn new(len: usize) -> Self {
        PatternRegistry {
            len,
            keys: IndexSet::new(),
        }
    }

    pub fn pattern_len(&self) -> usize {
        self.len
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn intern(&mut self, entries: &[i8]) -> Result<u32> {
        let mut buf = Vec::new();
        self.intern_with(entries.iter().map(|&e| e as i64), &mut buf)
    }

    /// Interns the difference vector of walk distances `column`.
    pub fn intern_column<T: Copy + Into<i64>>(&mut self, column: &[T], buf: &mut Vec<u8>) -> Result<u32> {
        self.intern_with(column.windows(2).map(|w| w[1].into() - w[0].into()), buf)
    }

    fn intern_with(&mut self, entries: impl Iterator<Item = i64>, buf: &mut Vec<u8>) -> Result<u32> {
        pack_into(entries, buf)?;
        debug_assert_eq!(buf.len(), self.len.div_ceil(4));
        if let Some(i) = self.keys.get_index_of(buf.as_slice()) {
            return Ok(i as u32);
        }
        let (i, _) = self.keys.insert_full(buf.clone().into_boxed_slice());
        Ok(i as u32)
    }

    pub fn get(&self, index: u32) -> Pattern {
        let key = &self.keys[index as usize];
        let entries = (0..self.len)
            .map(|i| ((key[i / 4] >> (2 * (i % 4))) & 3) as i8 - 1)
            .collect();
        Pattern::new(entries).expect("stored entries are valid")
    }

    pub fn iter(&self) -> impl Iterator<Item = Pattern> + '_ {
        (0..self.keys.len() as u32).map(|i| self.get(i))
    }
}

/// Number of distinct patterns of the vertices inside `hole`.
pub fn count_distinct_patterns(graph: &EmbeddedGraph, region: &Region, hole: &Hole) -> Result<usize> {
    let map = assign_inside_hole(region, graph)?;
    let dists = WalkDistances::full(graph, hole.walk());
    let mut registry = PatternRegistry::new(hole.len() - 1);
    let mut column = Vec::new();
    let mut buf = Vec::new();
    for u in map.members(hole.id) {
        dists.column_into(u as usize, &mut column);
        registry.intern_column(&column, &mut buf)?;
    }
    Ok(registry.len())
}

/// `(w+1)^3` written as `w^3 + 3w^2 + 3w + 1` for walk length `w`.
pub fn pattern_envelope(walk_len: usize) -> u64 {
    let w = walk_len as u64;
    w * w * w + 3 * w * w + 3 * w + 1
}

/// One hole's pattern count next to its size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternCensus {
    pub region: RegionId,
    pub hole: usize,
    pub walk_len: usize,
    pub inside: usize,
    pub distinct: usize,
}

impl PatternCensus {
    pub fn within_envelope(&self) -> bool {
        self.distinct as u64 <= pattern_envelope(self.walk_len)
    }
}

/// Exhaustive distinct-pattern counts for every hole of `regions`.
pub fn pattern_census(graph: &EmbeddedGraph, regions: &[Region]) -> Result<Vec<PatternCensus>> {
    let per_region: Vec<Vec<PatternCensus>> = regions
        .par_iter()
        .map(|region| {
            let map = assign_inside_hole(region, graph)?;
            let mut rows = Vec::new();
            for hole in &region.holes {
                let dists = WalkDistances::full(graph, hole.walk());
                let mut registry = PatternRegistry::new(hole.len() - 1);
                let (mut column, mut buf, mut inside) = (Vec::new(), Vec::new(), 0);
                for u in map.members(hole.id) {
                    inside += 1;
                    dists.column_into(u as usize, &mut column);
                    registry.intern_column(&column, &mut buf)?;
                }
                rows.push(PatternCensus {
                    region: region.id,
                    hole: hole.id,
                    walk_len: hole.len(),
                    inside,
                    distinct: registry.len(),
                });
            }
            Ok(rows)
        })
        .collect::<Result<_>>()?;
    Ok(per_region.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{r_division, recursive_r_division};
    use crate::generators::{gen_grid, gen_random_planar};
    use crate::graph::tests::cycle_with_pendant;
    use proptest::prelude::*;

    #[test]
    fn pendant_pattern() {
        let g = cycle_with_pendant();
        let d: Vec<u32> = [0, 1, 2, 3].iter().map(|&b| g.bfs_distances(4).get(b)).collect();
        assert_eq!(d, vec![1, 2, 3, 2]);
        let p = Pattern::from_walk_distances(&d).unwrap();
        assert_eq!(p.entries(), &[1, 1, -1]);
        assert_eq!(p.prefix(), &[0, 1, 2, 1]);
        // distance from the pattern to vertex 2
        let to2: Vec<u32> = [0, 1, 2, 3].iter().map(|&b| g.bfs_distances(b).get(2)).collect();
        assert_eq!(to2, vec![2, 1, 0, 1]);
        assert_eq!(dist_pattern_to_vertex(&p, &to2), 2);
    }

    #[test]
    fn pattern_of_vertex_on_hole() {
        let g = cycle_with_pendant();
        let regions = r_division(&g, 5).unwrap();
        assert_eq!(regions.len(), 1);
        // a region without the pendant edge
        let tree = recursive_r_division(&g, &[4]).unwrap();
        for r in tree.level(1).iter().map(|&i| tree.region(i)) {
            let map = assign_inside_hole(r, &g).unwrap();
            for h in &r.holes {
                let dists = WalkDistances::full(&g, h.walk());
                for u in map.members(h.id) {
                    let p = pattern_of_vertex(u, h, &dists).unwrap();
                    assert_eq!(p.len() + 1, h.len());
                }
            }
        }
    }

    #[test]
    fn trivial_patterns() {
        let p = Pattern::from_walk_distances(&[5]).unwrap();
        assert!(p.is_empty());
        assert_eq!(dist_pattern_to_vertex(&p, &[7]), 7);
        let q = Pattern::from_walk_distances(&[3, 3]).unwrap();
        assert_eq!(q.entries(), &[0]);
        assert!(matches!(
            Pattern::from_walk_distances(&[0, 2]),
            Err(Error::EntryOutOfRange { index: 1, value: 2 })
        ));
        assert!(matches!(Pattern::new(vec![0, 3]), Err(Error::EntryOutOfRange { index: 2, .. })));
    }

    #[test]
    fn registry_interning() {
        let mut reg = PatternRegistry::new(5);
        let a = reg.intern(&[1, 0, -1, 1, 1]).unwrap();
        let b = reg.intern(&[1, 0, -1, 1, 0]).unwrap();
        assert_eq!(reg.intern(&[1, 0, -1, 1, 1]).unwrap(), a);
        assert_ne!(a, b);
        assert_eq!(reg.len(), 2);
        assert_eq!(reg.get(b).entries(), &[1, 0, -1, 1, 0]);
        assert!(reg.intern(&[2, 0, 0, 0, 0]).is_err());
    }

    #[test]
    fn empty_inside_counts_zero() {
        // a chord-only hole: region is the 4-cycle of a square with one diagonal
        let g = EmbeddedGraph::from_rotation_system(
            4,
            vec![vec![1, 2, 3], vec![2, 0], vec![3, 0, 1], vec![0, 2]],
        )
        .unwrap();
        let tree = recursive_r_division(&g, &[4]).unwrap();
        let mut edges: Vec<u32> = (0..g.edge_count() as u32)
            .filter(|&e| g.edge(e) != [0, 2])
            .collect();
        edges.sort_unstable();
        let whole = tree.root();
        assert!(whole.holes.is_empty());
        let region = crate::decomposition::tests_support::region(&g, edges);
        assert_eq!(region.holes.len(), 1);
        assert_eq!(count_distinct_patterns(&g, &region, &region.holes[0]).unwrap(), 0);
    }

    #[test]
    fn grid_holes_obey_envelope() {
        let g = gen_grid(10, 10).unwrap();
        let regions = r_division(&g, 25).unwrap();
        let census = pattern_census(&g, &regions).unwrap();
        assert!(!census.is_empty());
        assert!(census.iter().all(|c| c.within_envelope()));
        let single = census.iter().find(|c| c.inside == 1);
        if let Some(c) = single {
            assert_eq!(c.distinct, 1);
        }
    }

    fn pattern_identities(g: &EmbeddedGraph, schedule: &[usize]) {
        let tree = recursive_r_division(g, schedule).unwrap();
        let n = g.vertex_count() as VertexId;
        let truth: Vec<Vec<u32>> = (0..n).map(|s| g.bfs_distances(s).dist).collect();
        for r in tree.regions().iter().skip(1) {
            let map = assign_inside_hole(r, g).unwrap();
            for h in &r.holes {
                let dists = WalkDistances::full(g, h.walk());
                let b0 = h.canonical_vertex();
                for u in map.members(h.id) {
                    let p = pattern_of_vertex(u, h, &dists).unwrap();
                    for &v in &r.vertices {
                        let col: Vec<u32> = (0..h.len()).map(|i| dists.get(i, v as usize)).collect();
                        let via = truth[u as usize][b0 as usize] as i32 + dist_pattern_to_vertex(&p, &col);
                        assert_eq!(via, truth[u as usize][v as usize] as i32);
                    }
                    for &c in &r.children {
                        let child = tree.region(c);
                        let cmap = assign_inside_hole(child, g).unwrap();
                        let ch = &child.holes[cmap.hole_of(u).unwrap()];
                        let cd = WalkDistances::full(g, ch.walk());
                        let from_p: Vec<i32> = ch
                            .walk()
                            .iter()
                            .map(|&b| {
                                let col: Vec<u32> = (0..h.len()).map(|i| dists.get(i, b as usize)).collect();
                                dist_pattern_to_vertex(&p, &col)
                            })
                            .collect();
                        let induced = induced_pattern(ch, &from_p).unwrap();
                        assert_eq!(induced, pattern_of_vertex(u, ch, &cd).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn identities_on_small_graphs() {
        pattern_identities(&gen_grid(6, 7).unwrap(), &[20, 6]);
        pattern_identities(&gen_random_planar(60, 3).unwrap(), &[20, 6]);
    }

    #[test]
    fn induced_on_same_hole_is_identity() {
        let g = gen_grid(6, 6).unwrap();
        let regions = r_division(&g, 12).unwrap();
        for r in &regions {
            let map = assign_inside_hole(r, &g).unwrap();
            for h in &r.holes {
                let dists = WalkDistances::full(&g, h.walk());
                if let Some(u) = map.members(h.id).next() {
                    let p = pattern_of_vertex(u, h, &dists).unwrap();
                    let from_p: Vec<i32> = h
                        .walk()
                        .iter()
                        .map(|&b| {
                            let col: Vec<u32> = (0..h.len()).map(|i| dists.get(i, b as usize)).collect();
                            dist_pattern_to_vertex(&p, &col)
                        })
                        .collect();
                    assert_eq!(induced_pattern(h, &from_p).unwrap(), p);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn prefix_sums_telescope(entries in proptest::collection::vec(-1i8..=1, 0..40)) {
            let p = Pattern::new(entries.clone()).unwrap();
            prop_assert_eq!(p.prefix().len(), entries.len() + 1);
            for i in 1..=entries.len() {
                prop_assert_eq!(p.prefix()[i] - p.prefix()[i - 1], entries[i - 1] as i32);
            }
            let mut reg = PatternRegistry::new(entries.len());
            let id = reg.intern(&entries).unwrap();
            prop_assert_eq!(reg.get(id), p);
        }

        #[test]
        fn pattern_distance_is_realizer_independent(seed in 0u64..40) {
            let g = gen_random_planar(80, seed).unwrap();
            let regions = r_division(&g, 20).unwrap();
            for r in &regions {
                let map = assign_inside_hole(r, &g).unwrap();
                for h in &r.holes {
                    let dists = WalkDistances::full(&g, h.walk());
                    let mut seen: std::collections::HashMap<Pattern, Vec<i32>> = Default::default();
                    for u in map.members(h.id) {
                        let p = pattern_of_vertex(u, h, &dists).unwrap();
                        let row: Vec<i32> = r.vertices.iter().map(|&v| {
                            let col: Vec<u32> = (0..h.len()).map(|i| dists.get(i, v as usize)).collect();
                            dist_pattern_to_vertex(&p, &col)
                        }).collect();
                        let du = g.bfs_distances(u);
                        for (j, &v) in r.vertices.iter().enumerate() {
                            prop_assert_eq!(du.get(h.canonical_vertex()) as i32 + row[j], du.get(v) as i32);
                        }
                        if let Some(prev) = seen.get(&p) {
                            prop_assert_eq!(prev, &row);
                        }
                        seen.insert(p, row);
                    }
                }
            }
        }
    }
}
