//! Seedable generators of embedded planar test graphs.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{EmbeddedGraph, VertexId};

pub const DEFAULT_DELETE_PROBABILITY: f64 = 0.2;

#[derive(Clone, Debug, PartialEq)]
pub enum GenSpec {
    Grid { rows: usize, cols: usize },
    TriangulatedGrid { rows: usize, cols: usize },
    RandomPlanar { n: usize, seed: u64, delete_probability: f64 },
}

impl GenSpec {
    pub fn generate(&self) -> Result<EmbeddedGraph> {
        match *self {
            GenSpec::Grid { rows, cols } => gen_grid(rows, cols),
            GenSpec::TriangulatedGrid { rows, cols } => gen_triangulated_grid(rows, cols),
            GenSpec::RandomPlanar {
                n,
                seed,
                delete_probability,
            } => gen_random_planar_with(n, seed, delete_probability),
        }
    }
}

/// Lattice graph whose neighbors are sorted by screen angle (y pointing down),
/// which yields a clockwise rotation system.
fn lattice(rows: usize, cols: usize, steps: &[(i64, i64)], family: &'static str) -> Result<EmbeddedGraph> {
    if rows == 0 || cols == 0 {
        return Err(Error::ZeroDimension { family, rows, cols });
    }
    let mut sorted = steps.to_vec();
    sorted.sort_by(|a, b| {
        let ta = (a.0 as f64).atan2(a.1 as f64);
        let tb = (b.0 as f64).atan2(b.1 as f64);
        ta.total_cmp(&tb)
    });
    let id = |r: usize, c: usize| (r * cols + c) as VertexId;
    let mut adjacency = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            let nbrs = sorted
                .iter()
                .filter_map(|&(dr, dc)| {
                    let (nr, nc) = (r as i64 + dr, c as i64 + dc);
                    (nr >= 0 && nc >= 0 && (nr as usize) < rows && (nc as usize) < cols)
                        .then(|| id(nr as usize, nc as usize))
                })
                .collect();
            adjacency.push(nbrs);
        }
    }
    EmbeddedGraph::from_rotation_system(rows * cols, adjacency)
}

/// `rows x cols` grid with row-major vertex ids.
pub fn gen_grid(rows: usize, cols: usize) -> Result<EmbeddedGraph> {
    lattice(rows, cols, &[(-1, 0), (0, 1), (1, 0), (0, -1)], "grid")
}

/// Grid with one diagonal (down-right) in every unit square.
pub fn gen_triangulated_grid(rows: usize, cols: usize) -> Result<EmbeddedGraph> {
    lattice(
        rows,
        cols,
        &[(-1, 0), (0, 1), (1, 1), (1, 0), (0, -1), (-1, -1)],
        "triangulated grid",
    )
}

pub fn gen_random_planar(n: usize, seed: u64) -> Result<EmbeddedGraph> {
    gen_random_planar_with(n, seed, DEFAULT_DELETE_PROBABILITY)
}

/// Random connected planar graph: a stacked triangulation grown by inserting
/// each new vertex into a uniformly chosen face, followed by deleting every
/// edge outside a random spanning tree with probability `delete_probability`.
pub fn gen_random_planar_with(n: usize, seed: u64, delete_probability: f64) -> Result<EmbeddedGraph> {
    if n < 3 {
        return Err(Error::TooFewVertices(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rot: Vec<Vec<VertexId>> = vec![vec![2, 1], vec![0, 2], vec![1, 0]];
    // faces as dart cycles a -> b -> c under next(u -> v) = v -> succ_v(u)
    let mut faces: Vec<[VertexId; 3]> = vec![[0, 1, 2], [0, 2, 1]];

    for x in 3..n as VertexId {
        let fi = rng.gen_range(0..faces.len());
        let corners = faces[fi];
        for j in 0..3 {
            let prev = corners[j];
            let at = corners[(j + 1) % 3];
            let list = &mut rot[at as usize];
            let pos = list.iter().position(|&w| w == prev).expect("face corner");
            list.insert(pos + 1, x);
        }
        rot.push(vec![corners[2], corners[1], corners[0]]);
        faces[fi] = [corners[0], corners[1], x];
        faces.push([corners[1], corners[2], x]);
        faces.push([corners[2], corners[0], x]);
    }

    if delete_probability > 0.0 {
        let mut tree = vec![Vec::new(); n];
        let mut seen = vec![false; n];
        let root = rng.gen_range(0..n);
        let mut queue = VecDeque::from([root as VertexId]);
        seen[root] = true;
        while let Some(u) = queue.pop_front() {
            let mut order = rot[u as usize].clone();
            order.shuffle(&mut rng);
            for v in order {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    tree[u as usize].push(v);
                    tree[v as usize].push(u);
                    queue.push_back(v);
                }
            }
        }
        let mut doomed = Vec::new();
        for u in 0..n as VertexId {
            for &v in &rot[u as usize] {
                if u < v && !tree[u as usize].contains(&v) && rng.gen_bool(delete_probability) {
                    doomed.push((u, v));
                }
            }
        }
        for (u, v) in doomed {
            rot[u as usize].retain(|&w| w != v);
            rot[v as usize].retain(|&w| w != u);
        }
    }
    EmbeddedGraph::from_rotation_system(n, rot)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_shapes() {
        let g = gen_grid(3, 3).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (9, 12));
        let p = gen_grid(1, 5).unwrap();
        assert_eq!(p.edge_count(), 4);
        assert!((1..4).all(|v| p.degree(v) == 2));
        let c = gen_grid(2, 2).unwrap();
        assert_eq!(c.edge_count(), 4);
        assert!((0..4).all(|v| c.degree(v) == 2));
        assert_eq!(c.face_count(), 2);
        assert!(matches!(gen_grid(0, 3), Err(Error::ZeroDimension { .. })));
    }

    #[test]
    fn triangulated_grid_inner_faces_are_triangles() {
        let g = gen_triangulated_grid(4, 5).unwrap();
        assert_eq!(g.edge_count(), 4 * 4 + 3 * 5 + 3 * 4);
        let triangles = g.faces().iter().filter(|f| f.len() == 3).count();
        assert_eq!(triangles, 2 * 3 * 4);
    }

    #[test]
    fn random_base_case_is_triangle() {
        let g = gen_random_planar(3, 7).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count(), g.face_count()), (3, 3, 2));
        assert!(matches!(gen_random_planar(2, 0), Err(Error::TooFewVertices(2))));
    }

    #[test]
    fn random_is_deterministic_and_connected() {
        let a = gen_random_planar(100, 42).unwrap();
        let b = gen_random_planar(100, 42).unwrap();
        assert_eq!(a.to_text(), b.to_text());
        assert!(a.is_connected());
        assert_ne!(a.to_text(), gen_random_planar(100, 43).unwrap().to_text());
        // Euler: re-validated from the emitted rotation system
        let again = EmbeddedGraph::from_text(&a.to_text()).unwrap();
        assert_eq!(again.vertex_count() + again.face_count(), again.edge_count() + 2);
        // some edges of the full triangulation (3n - 6) were deleted
        assert!(a.edge_count() < 3 * 100 - 6);
        assert!(a.edge_count() >= 99);
    }

    #[test]
    fn no_deletions_gives_triangulation() {
        let g = gen_random_planar_with(50, 1, 0.0).unwrap();
        assert_eq!(g.edge_count(), 3 * 50 - 6);
        assert!(g.faces().iter().all(|f| f.len() == 3));
    }
}
