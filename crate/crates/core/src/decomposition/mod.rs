//! r-divisions, holes, and recursive decomposition trees.

mod separator;

use std::collections::{HashMap, HashSet, VecDeque};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{canonical_rotation, DartId, EdgeId, EmbeddedGraph, FacialWalk, VertexId};

pub(crate) use separator::vertices_of;
#[cfg(test)]
use separator::edge_components;

pub type RegionId = u32;

/// Marker for "no hole" in per-vertex hole maps (the vertex lies in the region).
pub const NO_HOLE: u32 = u32::MAX;
const UNSET: u32 = u32::MAX - 1;

/// A face of a region that is not a face of the whole graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hole {
    pub id: usize,
    pub region: RegionId,
    /// Facial walk in the region, starting at the canonical vertex.
    pub walk: FacialWalk,
}

impl Hole {
    pub fn canonical_vertex(&self) -> VertexId {
        self.walk.walk[0]
    }

    pub fn walk(&self) -> &[VertexId] {
        &self.walk.walk
    }

    pub fn len(&self) -> usize {
        self.walk.walk.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walk.walk.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub id: RegionId,
    pub level: usize,
    pub parent: Option<RegionId>,
    pub children: Vec<RegionId>,
    /// Sorted edge ids.
    pub edges: Vec<EdgeId>,
    /// Sorted vertex ids.
    pub vertices: Vec<VertexId>,
    /// Sorted vertices with a neighbor outside the region.
    pub boundary: Vec<VertexId>,
    pub holes: Vec<Hole>,
}

impl Region {
    fn build(graph: &EmbeddedGraph, id: RegionId, level: usize, parent: Option<RegionId>, edges: Vec<EdgeId>) -> Self {
        let vertices = if edges.is_empty() {
            (0..graph.vertex_count() as VertexId).collect()
        } else {
            vertices_of(graph, &edges)
        };
        let mut region = Region {
            id,
            level,
            parent,
            children: Vec::new(),
            edges,
            vertices,
            boundary: Vec::new(),
            holes: Vec::new(),
        };
        region.boundary = region
            .vertices
            .iter()
            .copied()
            .filter(|&v| graph.neighbors(v).iter().any(|&w| !region.contains(w)))
            .collect();
        region.holes = identify_holes(&region, graph);
        region
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn local_index(&self, v: VertexId) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    pub fn has_edge(&self, e: EdgeId) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    fn has_dart(&self, graph: &EmbeddedGraph, d: DartId) -> bool {
        self.has_edge(graph.edge_of(d))
    }

    /// The region's incoming dart bounding the angle just before `d` in the
    /// rotation at the tail of `d`. Requires the tail to lie in the region.
    fn dart_before(&self, graph: &EmbeddedGraph, d: DartId) -> DartId {
        let mut q = graph.rotation_prev(d);
        while !self.has_dart(graph, q) {
            q = graph.rotation_prev(q);
        }
        graph.twin(q)
    }

    /// Index of the hole whose walk uses dart `d`, if any.
    fn hole_with_dart(&self, d: DartId) -> Option<usize> {
        self.holes.iter().position(|h| h.walk.darts.contains(&d))
    }
}

/// Faces of `region` (rotation inherited from `graph`) that are not faces of
/// `graph`, with walks canonicalized and ordered by their first dart.
pub fn identify_holes(region: &Region, graph: &EmbeddedGraph) -> Vec<Hole> {
    let mut darts = Vec::with_capacity(region.edges.len() * 2);
    let mut succ = Vec::with_capacity(region.edges.len() * 2);
    for &v in &region.vertices {
        let (a, b) = graph.dart_range(v);
        let first = darts.len();
        darts.extend((a..b).filter(|&d| region.has_dart(graph, d)));
        let own = darts.len() - first;
        for i in 0..own {
            succ.push(darts[first + (i + 1) % own]);
        }
    }
    let index = |d: DartId| darts.binary_search(&d).expect("region dart");
    let mut seen = vec![false; darts.len()];
    let mut holes = Vec::new();
    for start in 0..darts.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut is_hole = false;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            let d = darts[i];
            cycle.push(d);
            let next = succ[index(graph.twin(d))];
            is_hole |= next != graph.next_dart(d);
            i = index(next);
        }
        if is_hole {
            canonical_rotation(&mut cycle, |d| graph.tail(d));
            holes.push(cycle);
        }
    }
    holes.sort_unstable_by_key(|c| c[0]);
    holes
        .into_iter()
        .enumerate()
        .map(|(id, darts)| Hole {
            id,
            region: region.id,
            walk: FacialWalk {
                face: id,
                walk: darts.iter().map(|&d| graph.tail(d)).collect(),
                darts,
            },
        })
        .collect()
}

/// Hole of each external vertex of a region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InsideMap {
    hole_of: Vec<u32>,
}

impl InsideMap {
    /// `None` for vertices of the region.
    pub fn hole_of(&self, v: VertexId) -> Option<usize> {
        let h = self.hole_of[v as usize];
        (h != NO_HOLE).then_some(h as usize)
    }

    /// Vertices inside hole `h`, in increasing order.
    pub fn members(&self, h: usize) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.hole_of.len() as VertexId).filter(move |&v| self.hole_of[v as usize] == h as u32)
    }

    pub fn external_count(&self) -> usize {
        self.hole_of.iter().filter(|&&h| h != NO_HOLE).count()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.hole_of
    }
}

/// Assigns every vertex outside `region` to the hole it lies in. Each
/// component of G - V(R) attaches to R through darts; the hole is the face of
/// R entered by those darts.
pub fn assign_inside_hole(region: &Region, graph: &EmbeddedGraph) -> Result<InsideMap> {
    let all: Vec<VertexId> = (0..graph.vertex_count() as VertexId).collect();
    Ok(InsideMap {
        hole_of: inside_holes_within(graph, region, &all)?,
    })
}

/// Like [`assign_inside_hole`] but only for the sorted vertex list `scope`,
/// searching components within the subgraph induced by `scope`. Every scope
/// vertex must reach the region inside the scope. Returns one entry per scope
/// position ([`NO_HOLE`] for region vertices).
pub(crate) fn inside_holes_within(graph: &EmbeddedGraph, region: &Region, scope: &[VertexId]) -> Result<Vec<u32>> {
    let full = scope.len() == graph.vertex_count();
    let pos = |v: VertexId| -> Option<usize> {
        if full {
            Some(v as usize)
        } else {
            scope.binary_search(&v).ok()
        }
    };
    let mut hole_of_dart: HashMap<DartId, u32> = HashMap::new();
    for h in &region.holes {
        for &d in &h.walk.darts {
            hole_of_dart.insert(d, h.id as u32);
        }
    }
    let mut out = vec![UNSET; scope.len()];
    let mut component = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..scope.len() {
        if out[start] != UNSET {
            continue;
        }
        if region.contains(scope[start]) {
            out[start] = NO_HOLE;
            continue;
        }
        component.clear();
        queue.clear();
        out[start] = NO_HOLE - 2;
        queue.push_back(start);
        let mut hole: Option<u32> = None;
        while let Some(i) = queue.pop_front() {
            component.push(i);
            let c = scope[i];
            let (a, b) = graph.dart_range(c);
            for d in a..b {
                let x = graph.head(d);
                if region.contains(x) {
                    let incoming = region.dart_before(graph, graph.twin(d));
                    let h = *hole_of_dart
                        .get(&incoming)
                        .ok_or(Error::InconsistentEmbedding { vertex: c })?;
                    if hole.is_some_and(|g| g != h) {
                        return Err(Error::InconsistentEmbedding { vertex: c });
                    }
                    hole = Some(h);
                } else if let Some(j) = pos(x) {
                    if out[j] == UNSET {
                        out[j] = NO_HOLE - 2;
                        queue.push_back(j);
                    }
                }
            }
        }
        let h = hole.ok_or(Error::UnreachableComponent { vertex: scope[start] })?;
        for &i in &component {
            out[i] = h;
        }
    }
    Ok(out)
}

/// The hole of `child` (a subregion of the hole's region) whose face contains
/// the face of `hole`. `None` if that face of `child` is a face of the graph,
/// which happens only when nothing lies inside `hole`.
pub(crate) fn enclosing_hole(graph: &EmbeddedGraph, hole: &Hole, child: &Region) -> Option<usize> {
    let darts = &hole.walk.darts;
    for j in 0..darts.len() {
        let outgoing = darts[(j + 1) % darts.len()];
        if child.contains(graph.tail(outgoing)) {
            return child.hole_with_dart(child.dart_before(graph, outgoing));
        }
    }
    // No walk vertex lies in the child: leave the face through the graph until
    // the child is reached; everything crossed avoids the child.
    let mut seen: HashSet<VertexId> = hole.walk.walk.iter().copied().collect();
    let mut queue: VecDeque<VertexId> = hole.walk.walk.iter().copied().collect();
    while let Some(z) = queue.pop_front() {
        let (a, b) = graph.dart_range(z);
        for d in a..b {
            let y = graph.head(d);
            if child.contains(y) {
                return child.hole_with_dart(child.dart_before(graph, graph.twin(d)));
            }
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    None
}

fn check_connected(graph: &EmbeddedGraph) -> Result<()> {
    if graph.vertex_count() == 0 || !graph.is_connected() {
        return Err(Error::DisconnectedInput {
            components: graph.component_count(),
        });
    }
    Ok(())
}

/// An r-division of a connected graph: connected regions of at most
/// `max(r, 2)` vertices whose edge sets partition the edges.
pub fn r_division(graph: &EmbeddedGraph, r: usize) -> Result<Vec<Region>> {
    let n = graph.vertex_count();
    check_connected(graph)?;
    if r == 0 || r > n {
        return Err(Error::InvalidDivisionParameter { r, n });
    }
    let tree = recursive_r_division(graph, &[r])?;
    let mut regions = tree.regions;
    let level: Vec<Region> = regions.drain(1..).collect();
    Ok(level
        .into_iter()
        .map(|mut reg| {
            reg.parent = None;
            reg.id -= 1;
            for h in &mut reg.holes {
                h.region = reg.id;
            }
            reg
        })
        .collect())
}

/// Vertex to containing-regions lists for one level, in CSR layout.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Membership {
    offsets: Vec<u32>,
    regions: Vec<RegionId>,
}

impl Membership {
    fn new(n: usize, regions: &[Region], ids: &[RegionId]) -> Self {
        let mut counts = vec![0u32; n + 1];
        for &id in ids {
            for &v in &regions[id as usize].vertices {
                counts[v as usize + 1] += 1;
            }
        }
        for i in 0..n {
            counts[i + 1] += counts[i];
        }
        let mut fill = counts.clone();
        let mut list = vec![0; counts[n] as usize];
        for &id in ids {
            for &v in &regions[id as usize].vertices {
                list[fill[v as usize] as usize] = id;
                fill[v as usize] += 1;
            }
        }
        Membership {
            offsets: counts,
            regions: list,
        }
    }

    fn of(&self, v: VertexId) -> &[RegionId] {
        &self.regions[self.offsets[v as usize] as usize..self.offsets[v as usize + 1] as usize]
    }
}

/// Nested r-divisions: level 0 is the whole graph, level i an r_i-division
/// refining level i - 1.
#[derive(Clone, Debug)]
pub struct DecompositionTree {
    schedule: Vec<usize>,
    regions: Vec<Region>,
    levels: Vec<Vec<RegionId>>,
    membership: Vec<Membership>,
}

/// Builds the decomposition tree for the strictly decreasing `schedule`
/// r_1 > ... > r_k. An empty schedule yields the root alone.
pub fn recursive_r_division(graph: &EmbeddedGraph, schedule: &[usize]) -> Result<DecompositionTree> {
    let n = graph.vertex_count();
    check_connected(graph)?;
    let valid = schedule.windows(2).all(|w| w[0] > w[1]) && schedule.iter().all(|&r| (1..=n).contains(&r));
    if !valid {
        return Err(Error::NonDecreasingSchedule {
            schedule: schedule.to_vec(),
            n,
        });
    }
    let all_edges: Vec<EdgeId> = (0..graph.edge_count() as EdgeId).collect();
    let mut regions = vec![Region::build(graph, 0, 0, None, all_edges)];
    let mut levels = vec![vec![0]];
    if graph.edge_count() > 0 {
        for (i, &r) in schedule.iter().enumerate() {
            let parents = &levels[i];
            let split: Vec<Vec<Vec<EdgeId>>> = parents
                .par_iter()
                .map(|&p| separator::divide_edges(graph, &regions[p as usize].edges, r))
                .collect();
            let mut specs = Vec::new();
            for (&p, pieces) in parents.iter().zip(split) {
                for piece in pieces {
                    specs.push((p, piece));
                }
            }
            let base = regions.len() as RegionId;
            let built: Vec<Region> = specs
                .into_par_iter()
                .enumerate()
                .map(|(j, (p, piece))| Region::build(graph, base + j as RegionId, i + 1, Some(p), piece))
                .collect();
            let ids: Vec<RegionId> = built.iter().map(|r| r.id).collect();
            for reg in built {
                let p = reg.parent.unwrap() as usize;
                regions[p].children.push(reg.id);
                regions.push(reg);
            }
            levels.push(ids);
        }
    }
    let membership = levels.iter().map(|ids| Membership::new(n, &regions, ids)).collect();
    Ok(DecompositionTree {
        schedule: schedule.to_vec(),
        regions,
        levels,
        membership,
    })
}

impl DecompositionTree {
    pub fn schedule(&self) -> &[usize] {
        &self.schedule
    }

    /// Index of the deepest level.
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn root(&self) -> &Region {
        &self.regions[0]
    }

    pub fn region(&self, id: RegionId) -> &Region {
        &self.regions[id as usize]
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn level(&self, i: usize) -> &[RegionId] {
        &self.levels[i]
    }

    pub fn levels(&self) -> &[Vec<RegionId>] {
        &self.levels
    }

    /// Regions of level `level` containing `v`, by increasing id.
    pub fn regions_containing(&self, level: usize, v: VertexId) -> &[RegionId] {
        self.membership[level].of(v)
    }

    pub fn stats(&self) -> Vec<LevelStats> {
        self.levels
            .iter()
            .enumerate()
            .map(|(level, ids)| {
                let mut s = LevelStats {
                    level,
                    target: if level == 0 { self.regions[0].vertices.len() } else { self.schedule[level - 1] },
                    regions: ids.len(),
                    ..LevelStats::default()
                };
                for &id in ids {
                    let r = &self.regions[id as usize];
                    s.max_vertices = s.max_vertices.max(r.vertices.len());
                    s.total_vertices += r.vertices.len();
                    s.total_boundary += r.boundary.len();
                    s.max_boundary = s.max_boundary.max(r.boundary.len());
                    s.total_holes += r.holes.len();
                    s.max_holes = s.max_holes.max(r.holes.len());
                    for h in &r.holes {
                        s.max_walk = s.max_walk.max(h.len());
                        s.total_walk += h.len();
                    }
                }
                s
            })
            .collect()
    }
}

/// Per-level size summary of a decomposition tree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LevelStats {
    pub level: usize,
    pub target: usize,
    pub regions: usize,
    pub max_vertices: usize,
    pub total_vertices: usize,
    pub total_boundary: usize,
    pub max_boundary: usize,
    pub total_holes: usize,
    pub max_holes: usize,
    pub total_walk: usize,
    pub max_walk: usize,
}

#[cfg(test)]
pub(crate) mod tests_support {
    use super::*;

    pub fn region(graph: &EmbeddedGraph, edges: Vec<EdgeId>) -> Region {
        Region::build(graph, 0, 1, None, edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_grid, gen_random_planar};
    use crate::graph::tests::cycle_with_pendant;

    fn edge_partition_holds(g: &EmbeddedGraph, regions: &[&Region]) -> bool {
        let mut all: Vec<EdgeId> = regions.iter().flat_map(|r| r.edges.iter().copied()).collect();
        all.sort_unstable();
        all == (0..g.edge_count() as EdgeId).collect::<Vec<_>>()
    }

    fn brute_boundary(g: &EmbeddedGraph, r: &Region) -> Vec<VertexId> {
        let inside: HashSet<VertexId> = r.vertices.iter().copied().collect();
        r.vertices
            .iter()
            .copied()
            .filter(|&v| g.neighbors(v).iter().any(|w| !inside.contains(w)))
            .collect()
    }

    fn boundary_on_holes(r: &Region) -> bool {
        r.boundary.iter().all(|v| r.holes.iter().any(|h| h.walk().contains(v)))
    }

    #[test]
    fn whole_graph_division() {
        let g = gen_grid(3, 3).unwrap();
        let regions = r_division(&g, 9).unwrap();
        assert_eq!(regions.len(), 1);
        assert!(regions[0].boundary.is_empty());
        assert!(regions[0].holes.is_empty());
        assert_eq!(regions[0].vertices.len(), 9);
    }

    #[test]
    fn grid_division_partitions_edges() {
        let g = gen_grid(10, 10).unwrap();
        let regions = r_division(&g, 25).unwrap();
        assert!(edge_partition_holds(&g, &regions.iter().collect::<Vec<_>>()));
        assert_eq!(regions.iter().map(|r| r.edges.len()).sum::<usize>(), 180);
        for v in 0..100 {
            assert!(regions.iter().any(|r| r.contains(v)));
        }
        let holes: usize = regions.iter().map(|r| r.holes.len()).sum();
        assert!(holes >= 1);
        for r in &regions {
            assert!(r.vertices.len() <= 25);
            assert_eq!(r.boundary, brute_boundary(&g, r));
            assert!(boundary_on_holes(r));
            assert_eq!(edge_components(&g, &r.edges).len(), 1);
        }
    }

    #[test]
    fn path_boundaries_are_cut_vertices() {
        let g = gen_grid(1, 5).unwrap();
        let regions = r_division(&g, 2).unwrap();
        assert_eq!(regions.len(), 4);
        let mut boundary: Vec<VertexId> = regions.iter().flat_map(|r| r.boundary.clone()).collect();
        boundary.sort_unstable();
        boundary.dedup();
        assert_eq!(boundary, vec![1, 2, 3]);
    }

    #[test]
    fn division_rejects_bad_input() {
        let g = gen_grid(3, 3).unwrap();
        assert!(matches!(r_division(&g, 0), Err(Error::InvalidDivisionParameter { .. })));
        assert!(matches!(r_division(&g, 10), Err(Error::InvalidDivisionParameter { .. })));
        let two = EmbeddedGraph::from_rotation_system(4, vec![vec![1], vec![0], vec![3], vec![2]]).unwrap();
        assert!(matches!(r_division(&two, 2), Err(Error::DisconnectedInput { components: 2 })));
        assert!(matches!(
            recursive_r_division(&g, &[4, 4]),
            Err(Error::NonDecreasingSchedule { .. })
        ));
    }

    fn region_from_edges(g: &EmbeddedGraph, pairs: &[(VertexId, VertexId)]) -> Region {
        let mut edges: Vec<EdgeId> = pairs
            .iter()
            .map(|&(u, v)| g.edge_of(g.dart_between(u, v).unwrap()))
            .collect();
        edges.sort_unstable();
        Region::build(g, 0, 1, None, edges)
    }

    #[test]
    fn single_square_has_outer_hole_only() {
        let g = gen_grid(4, 4).unwrap();
        // interior unit square 5-6-10-9
        let r = region_from_edges(&g, &[(5, 6), (6, 10), (10, 9), (9, 5)]);
        assert_eq!(r.holes.len(), 1);
        let walk = r.holes[0].walk();
        assert_eq!(walk[0], 5);
        let mut sorted = walk.to_vec();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![5, 6, 9, 10]);
        // the hole is the side holding the rest of the graph
        let map = assign_inside_hole(&r, &g).unwrap();
        assert_eq!(map.external_count(), 12);
        assert!((0..16).filter(|v| !r.contains(*v)).all(|v| map.hole_of(v) == Some(0)));
    }

    #[test]
    fn four_cycle_in_larger_graph() {
        let g = cycle_with_pendant();
        let r = region_from_edges(&g, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(r.boundary, vec![0]);
        let map = assign_inside_hole(&r, &g).unwrap();
        let h = map.hole_of(4).unwrap();
        assert!(r.holes[h].walk().contains(&0));
        assert_eq!(r.holes.len(), 1);
        assert_eq!(r.holes[h].walk(), &[0, 3, 2, 1][..]);
    }

    #[test]
    fn region_missing_one_vertex() {
        let g = gen_grid(3, 3).unwrap();
        let edges: Vec<(VertexId, VertexId)> = g
            .edges()
            .iter()
            .filter(|e| !e.contains(&4))
            .map(|e| (e[0], e[1]))
            .collect();
        let r = region_from_edges(&g, &edges);
        let map = assign_inside_hole(&r, &g).unwrap();
        let h = map.hole_of(4).unwrap();
        for w in g.neighbors(4) {
            assert!(r.holes[h].walk().contains(w));
        }
        assert_eq!(map.external_count(), 1);
    }

    #[test]
    fn whole_graph_has_empty_inside_map() {
        let g = gen_grid(3, 4).unwrap();
        let tree = recursive_r_division(&g, &[]).unwrap();
        assert_eq!(tree.depth(), 0);
        assert!(tree.root().holes.is_empty());
        assert_eq!(assign_inside_hole(tree.root(), &g).unwrap().external_count(), 0);
    }

    #[test]
    fn schedule_of_n_gives_depth_one() {
        let g = gen_grid(4, 4).unwrap();
        let tree = recursive_r_division(&g, &[16]).unwrap();
        assert_eq!(tree.depth(), 1);
        assert_eq!(tree.level(1).len(), 1);
        assert_eq!(tree.region(tree.level(1)[0]).edges, tree.root().edges);
    }

    fn audit_tree(g: &EmbeddedGraph, tree: &DecompositionTree) {
        for level in 0..=tree.depth() {
            let regs: Vec<&Region> = tree.level(level).iter().map(|&i| tree.region(i)).collect();
            assert!(edge_partition_holds(g, &regs), "level {level}");
            for r in &regs {
                assert_eq!(r.boundary, brute_boundary(g, r));
                assert!(boundary_on_holes(r));
                if let Some(p) = r.parent {
                    let parent = tree.region(p);
                    assert!(r.edges.iter().all(|&e| parent.has_edge(e)));
                }
                for v in &r.vertices {
                    assert!(tree.regions_containing(level, *v).contains(&r.id));
                }
            }
            if level > 0 {
                assert!(regs.iter().all(|r| r.vertices.len() <= tree.schedule()[level - 1].max(2)));
            }
        }
    }

    #[test]
    fn nested_grid_tree() {
        let g = gen_grid(8, 8).unwrap();
        let tree = recursive_r_division(&g, &[16, 4]).unwrap();
        assert_eq!(tree.depth(), 2);
        audit_tree(&g, &tree);
    }

    #[test]
    fn random_trees_and_inside_maps() {
        for seed in 0..4 {
            let g = gen_random_planar(150, seed).unwrap();
            let tree = recursive_r_division(&g, &[40, 12, 4]).unwrap();
            audit_tree(&g, &tree);
            for r in tree.regions().iter().skip(1) {
                let map = assign_inside_hole(r, &g).unwrap();
                assert_eq!(map.external_count(), 150 - r.vertices.len());
                // enclosing hole agrees with the assignment of inside vertices
                for child in &r.children {
                    let child = tree.region(*child);
                    let child_map = assign_inside_hole(child, &g).unwrap();
                    for h in &r.holes {
                        if let Some(u) = map.members(h.id).next() {
                            assert_eq!(enclosing_hole(&g, h, child), child_map.hole_of(u));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn scoped_assignment_matches_full() {
        let g = gen_random_planar(200, 9).unwrap();
        let tree = recursive_r_division(&g, &[50, 10]).unwrap();
        for &id in tree.level(2) {
            let r = tree.region(id);
            let parent = tree.region(r.parent.unwrap());
            let scoped = inside_holes_within(&g, r, &parent.vertices).unwrap();
            let full = assign_inside_hole(r, &g).unwrap();
            for (i, &v) in parent.vertices.iter().enumerate() {
                assert_eq!(scoped[i], full.as_slice()[v as usize]);
            }
        }
    }
}
