//! Embedded planar graphs stored as rotation systems.
//!
//! Every undirected edge `{u, v}` is split into two darts `u -> v` and
//! `v -> u`. The darts leaving a vertex are stored contiguously, in the
//! cyclic order given by the rotation system. Faces are traced with
//! `next(u -> v) = v -> w` where `w` follows `u` in the rotation at `v`;
//! this fixes the orientation called "clockwise" throughout the crate.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;
use std::io::BufRead;

use crate::error::{Error, Result};

pub type VertexId = u32;
pub type DartId = u32;
pub type EdgeId = u32;

/// Distance marker for unreachable vertices.
pub const INF: u32 = u32::MAX;

/// Header line of the `planar-graph v1` text format.
pub const GRAPH_HEADER: &str = "planar-graph v1";

/// A face boundary traversed from its minimum vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacialWalk {
    pub face: usize,
    /// `darts[i]` leaves `walk[i]`.
    pub darts: Vec<DartId>,
    pub walk: Vec<VertexId>,
}

impl FacialWalk {
    pub fn len(&self) -> usize {
        self.walk.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walk.is_empty()
    }
}

/// Rotates a closed dart cycle so that it starts at its minimum tail vertex.
/// Ties between repeated occurrences go to the smallest dart id.
pub(crate) fn canonical_rotation(darts: &mut [DartId], tail: impl Fn(DartId) -> VertexId) {
    let start = (0..darts.len())
        .min_by_key(|&i| (tail(darts[i]), darts[i]))
        .unwrap_or(0);
    darts.rotate_left(start);
}

/// Hop distances from a single source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceRow {
    pub source: VertexId,
    pub dist: Vec<u32>,
}

impl DistanceRow {
    pub fn get(&self, v: VertexId) -> u32 {
        self.dist[v as usize]
    }
}

#[derive(Clone, Debug)]
pub struct EmbeddedGraph {
    offsets: Vec<u32>,
    heads: Vec<VertexId>,
    tails: Vec<VertexId>,
    twins: Vec<DartId>,
    dart_edge: Vec<EdgeId>,
    edges: Vec<[VertexId; 2]>,
    faces: Vec<FacialWalk>,
    dart_face: Vec<u32>,
    component: Vec<u32>,
    components: usize,
}

impl EmbeddedGraph {
    /// Validates a rotation system and enumerates its faces.
    pub fn from_rotation_system(n: usize, adjacency: Vec<Vec<VertexId>>) -> Result<Self> {
        if adjacency.len() != n {
            return Err(Error::Parse {
                line: 0,
                message: format!("expected {n} adjacency lists, got {}", adjacency.len()),
            });
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut heads = Vec::new();
        let mut tails = Vec::new();
        offsets.push(0u32);
        for (u, nbrs) in adjacency.iter().enumerate() {
            for &v in nbrs {
                if v as usize >= n {
                    return Err(Error::VertexOutOfRange {
                        vertex: v as u64,
                        n,
                    });
                }
                if v as usize == u {
                    return Err(Error::SelfLoop(v));
                }
                heads.push(v);
                tails.push(u as VertexId);
            }
            offsets.push(heads.len() as u32);
        }

        let mut dart_of: HashMap<(VertexId, VertexId), DartId> = HashMap::with_capacity(heads.len());
        for d in 0..heads.len() {
            if dart_of.insert((tails[d], heads[d]), d as DartId).is_some() {
                let (u, v) = (tails[d].min(heads[d]), tails[d].max(heads[d]));
                return Err(Error::ParallelEdge { u, v });
            }
        }
        let mut twins = vec![0; heads.len()];
        let mut dart_edge = vec![0; heads.len()];
        let mut edges = Vec::with_capacity(heads.len() / 2);
        for d in 0..heads.len() {
            let (u, v) = (tails[d], heads[d]);
            let Some(&t) = dart_of.get(&(v, u)) else {
                return Err(Error::AsymmetricAdjacency { u, v });
            };
            twins[d] = t;
            if u < v {
                dart_edge[d] = edges.len() as EdgeId;
                dart_edge[t as usize] = edges.len() as EdgeId;
                edges.push([u, v]);
            }
        }

        let mut graph = EmbeddedGraph {
            offsets,
            heads,
            tails,
            twins,
            dart_edge,
            edges,
            faces: Vec::new(),
            dart_face: Vec::new(),
            component: Vec::new(),
            components: 0,
        };
        graph.faces = graph.trace_faces();
        graph.dart_face = vec![0; graph.heads.len()];
        for f in &graph.faces {
            for &d in &f.darts {
                graph.dart_face[d as usize] = f.face as u32;
            }
        }
        let (component, components) = graph.label_components();
        graph.component = component;
        graph.components = components;
        graph.check_euler()?;
        Ok(graph)
    }

    fn trace_faces(&self) -> Vec<FacialWalk> {
        let mut seen = vec![false; self.heads.len()];
        let mut faces = Vec::new();
        for start in 0..self.heads.len() {
            if seen[start] {
                continue;
            }
            let mut darts = Vec::new();
            let mut d = start as DartId;
            while !seen[d as usize] {
                seen[d as usize] = true;
                darts.push(d);
                d = self.next_dart(d);
            }
            canonical_rotation(&mut darts, |d| self.tails[d as usize]);
            let walk = darts.iter().map(|&d| self.tails[d as usize]).collect();
            faces.push(FacialWalk {
                face: faces.len(),
                darts,
                walk,
            });
        }
        faces
    }

    fn label_components(&self) -> (Vec<u32>, usize) {
        let n = self.vertex_count();
        let mut label = vec![u32::MAX; n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for root in 0..n {
            if label[root] != u32::MAX {
                continue;
            }
            label[root] = count;
            queue.push_back(root as VertexId);
            while let Some(u) = queue.pop_front() {
                for &v in self.neighbors(u) {
                    if label[v as usize] == u32::MAX {
                        label[v as usize] = count;
                        queue.push_back(v);
                    }
                }
            }
            count += 1;
        }
        (label, count as usize)
    }

    fn check_euler(&self) -> Result<()> {
        let c = self.components;
        let mut verts = vec![0usize; c];
        let mut darts = vec![0usize; c];
        let mut faces = vec![0usize; c];
        let mut root = vec![VertexId::MAX; c];
        for v in 0..self.vertex_count() {
            let k = self.component[v] as usize;
            verts[k] += 1;
            darts[k] += self.degree(v as VertexId);
            root[k] = root[k].min(v as VertexId);
        }
        for f in &self.faces {
            faces[self.component[f.walk[0] as usize] as usize] += 1;
        }
        for k in 0..c {
            // an isolated vertex sits in a single face with no darts
            let f = faces[k].max(1);
            let m = darts[k] / 2;
            if verts[k] + f != m + 2 {
                return Err(Error::EulerViolation {
                    root: root[k],
                    vertices: verts[k],
                    edges: m,
                    faces: f,
                });
            }
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn dart_count(&self) -> usize {
        self.heads.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    pub fn is_connected(&self) -> bool {
        self.components <= 1
    }

    pub fn degree(&self, v: VertexId) -> usize {
        (self.offsets[v as usize + 1] - self.offsets[v as usize]) as usize
    }

    /// Neighbors of `v` in rotation order.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        let (a, b) = self.dart_range(v);
        &self.heads[a as usize..b as usize]
    }

    /// Darts leaving `v`, as the half-open id range `[a, b)` in rotation order.
    pub fn dart_range(&self, v: VertexId) -> (DartId, DartId) {
        (self.offsets[v as usize], self.offsets[v as usize + 1])
    }

    pub fn head(&self, d: DartId) -> VertexId {
        self.heads[d as usize]
    }

    pub fn tail(&self, d: DartId) -> VertexId {
        self.tails[d as usize]
    }

    pub fn twin(&self, d: DartId) -> DartId {
        self.twins[d as usize]
    }

    pub fn edge_of(&self, d: DartId) -> EdgeId {
        self.dart_edge[d as usize]
    }

    pub fn edge(&self, e: EdgeId) -> [VertexId; 2] {
        self.edges[e as usize]
    }

    pub fn edges(&self) -> &[[VertexId; 2]] {
        &self.edges
    }

    /// Both darts of an edge, lower id first.
    pub fn edge_darts(&self, e: EdgeId) -> [DartId; 2] {
        let [u, v] = self.edges[e as usize];
        let d = self.dart_between(u, v).expect("edge endpoints are adjacent");
        let t = self.twin(d);
        [d.min(t), d.max(t)]
    }

    pub fn dart_between(&self, u: VertexId, v: VertexId) -> Option<DartId> {
        let (a, b) = self.dart_range(u);
        (a..b).find(|&d| self.heads[d as usize] == v)
    }

    /// The dart following `d` in rotation order around its tail.
    pub fn rotation_next(&self, d: DartId) -> DartId {
        let v = self.tails[d as usize];
        let (a, b) = self.dart_range(v);
        if d + 1 == b {
            a
        } else {
            d + 1
        }
    }

    /// The dart preceding `d` in rotation order around its tail.
    pub fn rotation_prev(&self, d: DartId) -> DartId {
        let v = self.tails[d as usize];
        let (a, b) = self.dart_range(v);
        if d == a {
            b - 1
        } else {
            d - 1
        }
    }

    /// Face successor of `d`.
    pub fn next_dart(&self, d: DartId) -> DartId {
        self.rotation_next(self.twins[d as usize])
    }

    pub fn faces(&self) -> &[FacialWalk] {
        &self.faces
    }

    pub fn face_of_dart(&self, d: DartId) -> usize {
        self.dart_face[d as usize] as usize
    }

    pub fn component_of(&self, v: VertexId) -> usize {
        self.component[v as usize] as usize
    }

    pub fn check_vertex(&self, v: u64) -> Result<VertexId> {
        if (v as usize) < self.vertex_count() {
            Ok(v as VertexId)
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.vertex_count(),
            })
        }
    }

    /// The rotation system as plain adjacency lists.
    pub fn adjacency(&self) -> Vec<Vec<VertexId>> {
        (0..self.vertex_count() as VertexId)
            .map(|v| self.neighbors(v).to_vec())
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{GRAPH_HEADER}");
        let _ = writeln!(out, "{} {}", self.vertex_count(), self.edge_count());
        for v in 0..self.vertex_count() as VertexId {
            let mut first = true;
            for &w in self.neighbors(v) {
                if !first {
                    out.push(' ');
                }
                first = false;
                let _ = write!(out, "{w}");
            }
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        Self::read(text.as_bytes())
    }

    /// Parses the `planar-graph v1` format.
    pub fn read(reader: impl BufRead) -> Result<Self> {
        let mut lines = reader.lines();
        let mut next_line = |_line: usize| lines.next().transpose();
        let parse_err = |line: usize, message: String| Error::Parse { line, message };

        let header = next_line(1)?.ok_or_else(|| parse_err(1, "empty input".into()))?;
        if header.trim_end() != GRAPH_HEADER {
            return Err(parse_err(1, format!("expected header `{GRAPH_HEADER}`")));
        }
        let counts = next_line(2)?.ok_or_else(|| parse_err(2, "missing `n m` line".into()))?;
        let nums: Vec<&str> = counts.split_whitespace().collect();
        let [n, m] = nums[..] else {
            return Err(parse_err(2, "expected `n m`".into()));
        };
        let n: usize = n.parse().map_err(|e| parse_err(2, format!("{e}")))?;
        let m: usize = m.parse().map_err(|e| parse_err(2, format!("{e}")))?;
        let mut adjacency = Vec::with_capacity(n);
        for i in 0..n {
            let line = next_line(i + 3)?
                .ok_or_else(|| parse_err(i + 3, format!("missing adjacency of vertex {i}")))?;
            let nbrs = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<VertexId>()
                        .map_err(|e| parse_err(i + 3, format!("`{tok}`: {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            adjacency.push(nbrs);
        }
        let graph = Self::from_rotation_system(n, adjacency)?;
        if graph.edge_count() != m {
            return Err(parse_err(
                2,
                format!("header declares {m} edges, lists contain {}", graph.edge_count()),
            ));
        }
        Ok(graph)
    }

    /// Exact hop distances from `source`; unreachable vertices get [`INF`].
    pub fn bfs_distances(&self, source: VertexId) -> DistanceRow {
        let mut dist = vec![INF; self.vertex_count()];
        let mut queue = VecDeque::new();
        self.bfs_into(source, &mut dist, &mut queue);
        DistanceRow { source, dist }
    }

    /// BFS into a caller-provided buffer, which must be filled with [`INF`].
    pub fn bfs_into(&self, source: VertexId, dist: &mut [u32], queue: &mut VecDeque<VertexId>) {
        queue.clear();
        dist[source as usize] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize] + 1;
            for &v in self.neighbors(u) {
                if dist[v as usize] == INF {
                    dist[v as usize] = du;
                    queue.push_back(v);
                }
            }
        }
    }
}

/// Minimum vertex of a nonempty collection.
pub fn canonical_vertex<I: IntoIterator<Item = VertexId>>(vertices: I) -> Result<VertexId> {
    vertices.into_iter().min().ok_or(Error::EmptySet)
}

/// Reusable BFS that stops once a target set has been reached.
#[derive(Default)]
pub(crate) struct BoundedBfs {
    dist: Vec<u32>,
    touched: Vec<VertexId>,
    queue: VecDeque<VertexId>,
}

impl BoundedBfs {
    pub fn new(n: usize) -> Self {
        BoundedBfs {
            dist: vec![INF; n],
            touched: Vec::new(),
            queue: VecDeque::new(),
        }
    }

    /// Runs BFS from `source` until every vertex with `is_target` set has
    /// been labelled (`remaining` of them). Returns the distance buffer.
    pub fn run(
        &mut self,
        graph: &EmbeddedGraph,
        source: VertexId,
        is_target: &[bool],
        mut remaining: usize,
    ) -> &[u32] {
        for &v in &self.touched {
            self.dist[v as usize] = INF;
        }
        self.touched.clear();
        self.queue.clear();
        self.dist[source as usize] = 0;
        self.touched.push(source);
        self.queue.push_back(source);
        if is_target[source as usize] {
            remaining -= 1;
        }
        while remaining > 0 {
            let Some(u) = self.queue.pop_front() else {
                break;
            };
            let du = self.dist[u as usize] + 1;
            for &v in graph.neighbors(u) {
                if self.dist[v as usize] == INF {
                    self.dist[v as usize] = du;
                    self.touched.push(v);
                    self.queue.push_back(v);
                    if is_target[v as usize] {
                        remaining -= 1;
                    }
                }
            }
        }
        &self.dist
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::generators::gen_grid;

    fn cycle4() -> EmbeddedGraph {
        EmbeddedGraph::from_rotation_system(
            4,
            vec![vec![1, 3], vec![2, 0], vec![3, 1], vec![0, 2]],
        )
        .unwrap()
    }

    /// 4-cycle 0-1-2-3 with a pendant vertex 4 hanging off 0.
    pub(crate) fn cycle_with_pendant() -> EmbeddedGraph {
        EmbeddedGraph::from_rotation_system(
            5,
            vec![vec![1, 4, 3], vec![2, 0], vec![3, 1], vec![0, 2], vec![0]],
        )
        .unwrap()
    }

    #[test]
    fn grid_counts() {
        let g = gen_grid(3, 3).unwrap();
        assert_eq!(g.vertex_count(), 9);
        assert_eq!(g.edge_count(), 12);
        assert_eq!(g.face_count(), 5);
        let outer = g.faces().iter().max_by_key(|f| f.len()).unwrap();
        let mut distinct = outer.walk.clone();
        distinct.sort_unstable();
        distinct.dedup();
        assert_eq!(distinct.len(), 8);
    }

    #[test]
    fn single_edge() {
        let g = EmbeddedGraph::from_rotation_system(2, vec![vec![1], vec![0]]).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count(), g.face_count()), (2, 1, 1));
        assert_eq!(g.faces()[0].walk, vec![0, 1]);
    }

    #[test]
    fn rejects_bad_rotation_systems() {
        let asym = EmbeddedGraph::from_rotation_system(2, vec![vec![1], vec![]]);
        assert!(matches!(asym, Err(Error::AsymmetricAdjacency { u: 0, v: 1 })));
        let looped = EmbeddedGraph::from_rotation_system(1, vec![vec![0]]);
        assert!(matches!(looped, Err(Error::SelfLoop(0))));
        let parallel = EmbeddedGraph::from_rotation_system(2, vec![vec![1, 1], vec![0, 0]]);
        assert!(matches!(parallel, Err(Error::ParallelEdge { .. })));
        // K4 with a scrambled rotation at one vertex has genus 1
        let k4 = vec![vec![1, 2, 3], vec![0, 3, 2], vec![0, 1, 3], vec![0, 2, 1]];
        assert!(EmbeddedGraph::from_rotation_system(4, k4.clone()).is_ok());
        let mut bad = k4;
        bad[0] = vec![1, 3, 2];
        let err = EmbeddedGraph::from_rotation_system(4, bad);
        assert!(matches!(err, Err(Error::EulerViolation { .. })));
    }

    #[test]
    fn cycle_has_two_faces_starting_at_zero() {
        let g = cycle4();
        assert_eq!(g.face_count(), 2);
        for f in g.faces() {
            assert_eq!(f.walk[0], 0);
            assert_eq!(f.len(), 4);
        }
    }

    #[test]
    fn pendant_makes_outer_walk_non_simple() {
        // triangle 0-1-2 with pendant 3 at vertex 0
        let g = EmbeddedGraph::from_rotation_system(
            4,
            vec![vec![1, 3, 2], vec![2, 0], vec![0, 1], vec![0]],
        )
        .unwrap();
        assert_eq!(g.face_count(), 2);
        let outer = g.faces().iter().find(|f| f.len() == 5).unwrap();
        assert_eq!(outer.walk.iter().filter(|&&v| v == 0).count(), 2);
        assert_eq!(outer.walk[0], 0);
    }

    #[test]
    fn every_dart_on_one_face() {
        let g = gen_grid(4, 6).unwrap();
        let total: usize = g.faces().iter().map(|f| f.len()).sum();
        assert_eq!(total, 2 * g.edge_count());
        for f in g.faces() {
            for (i, &d) in f.darts.iter().enumerate() {
                assert_eq!(g.face_of_dart(d), f.face);
                let nxt = f.darts[(i + 1) % f.len()];
                assert_eq!(g.next_dart(d), nxt);
                assert_eq!(g.head(d), g.tail(nxt));
            }
        }
    }

    #[test]
    fn bfs_examples() {
        let g = gen_grid(3, 3).unwrap();
        let row = g.bfs_distances(0);
        assert_eq!(row.get(8), 4);
        assert_eq!(row.get(0), 0);
        let p = cycle_with_pendant();
        assert_eq!(p.bfs_distances(4).get(2), 3);
    }

    #[test]
    fn canonical_vertex_is_minimum() {
        assert_eq!(canonical_vertex([7, 2, 9]).unwrap(), 2);
        assert_eq!(canonical_vertex([0]).unwrap(), 0);
        assert_eq!(canonical_vertex([5, 5, 3]).unwrap(), 3);
        assert!(matches!(canonical_vertex([]), Err(Error::EmptySet)));
    }

    #[test]
    fn text_round_trip() {
        let g = gen_grid(3, 4).unwrap();
        let text = g.to_text();
        let h = EmbeddedGraph::from_text(&text).unwrap();
        assert_eq!(h.to_text(), text);
        assert!(text.starts_with("planar-graph v1\n12 17\n"));
    }

    #[test]
    fn text_rejects_edge_count_mismatch() {
        let err = EmbeddedGraph::from_text("planar-graph v1\n2 2\n1\n0\n");
        assert!(matches!(err, Err(Error::Parse { line: 2, .. })));
        let err = EmbeddedGraph::from_text("graph\n");
        assert!(matches!(err, Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn disconnected_graphs_are_allowed() {
        let g = EmbeddedGraph::from_rotation_system(3, vec![vec![1], vec![0], vec![]]).unwrap();
        assert_eq!(g.component_count(), 2);
        assert_eq!(g.bfs_distances(0).get(2), INF);
    }
}
