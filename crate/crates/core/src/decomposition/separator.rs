//! Recursive edge partitioning with fundamental-cycle separators.
//!
//! A piece (a connected edge set of the input graph, with the rotation order
//! inherited from it) is triangulated by placing an artificial vertex inside
//! every non-triangular face. A BFS tree of the triangulated piece is grown
//! from a central vertex; every non-tree edge closes a fundamental cycle, and
//! the non-tree edges form a spanning tree of the dual. The cycle whose
//! interior holds a balanced share of natural edges, preferring short cycles,
//! splits the piece. Artificial elements are discarded and both sides are
//! split into connected components before recursing.

use std::collections::{HashMap, VecDeque};

use crate::graph::{DartId, EdgeId, EmbeddedGraph, VertexId};

const NONE: u32 = u32::MAX;

/// Splits `edges` into connected pieces spanning at most `max(r, 2)` vertices.
/// Output pieces are sorted internally and ordered by their smallest edge id.
pub(crate) fn divide_edges(graph: &EmbeddedGraph, edges: &[EdgeId], r: usize) -> Vec<Vec<EdgeId>> {
    let target = r.max(2);
    let mut done = Vec::new();
    let mut stack = edge_components(graph, edges);
    while let Some(piece) = stack.pop() {
        if vertex_count(graph, &piece) <= target {
            done.push(piece);
            continue;
        }
        let (a, b) = split_piece(graph, &piece);
        stack.extend(edge_components(graph, &a));
        stack.extend(edge_components(graph, &b));
    }
    let mut pieces = merge_small(graph, done, target);
    for p in &mut pieces {
        p.sort_unstable();
    }
    pieces.sort_unstable_by_key(|p| p[0]);
    pieces
}

pub(crate) fn vertices_of(graph: &EmbeddedGraph, edges: &[EdgeId]) -> Vec<VertexId> {
    let mut vs: Vec<VertexId> = edges.iter().flat_map(|&e| graph.edge(e)).collect();
    vs.sort_unstable();
    vs.dedup();
    vs
}

fn vertex_count(graph: &EmbeddedGraph, edges: &[EdgeId]) -> usize {
    vertices_of(graph, edges).len()
}

/// Connected components of an edge set, each in discovery order.
pub(crate) fn edge_components(graph: &EmbeddedGraph, edges: &[EdgeId]) -> Vec<Vec<EdgeId>> {
    let verts = vertices_of(graph, edges);
    let idx = |v: VertexId| verts.binary_search(&v).unwrap();
    let mut parent: Vec<usize> = (0..verts.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &e in edges {
        let [u, v] = graph.edge(e);
        let (a, b) = (find(&mut parent, idx(u)), find(&mut parent, idx(v)));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut slot: HashMap<usize, usize> = HashMap::new();
    let mut out: Vec<Vec<EdgeId>> = Vec::new();
    for &e in edges {
        let root = find(&mut parent, idx(graph.edge(e)[0]));
        let k = *slot.entry(root).or_insert_with(|| {
            out.push(Vec::new());
            out.len() - 1
        });
        out[k].push(e);
    }
    out
}

/// Greedily merges pieces that share a vertex while the union stays within
/// `target` vertices.
fn merge_small(graph: &EmbeddedGraph, pieces: Vec<Vec<EdgeId>>, target: usize) -> Vec<Vec<EdgeId>> {
    let mut verts: Vec<Vec<VertexId>> = pieces.iter().map(|p| vertices_of(graph, p)).collect();
    let mut edges: Vec<Vec<EdgeId>> = pieces;
    let mut alive = vec![true; edges.len()];
    let mut owner: HashMap<VertexId, Vec<usize>> = HashMap::new();
    for (i, vs) in verts.iter().enumerate() {
        for &v in vs {
            owner.entry(v).or_default().push(i);
        }
    }
    let mut forward: Vec<usize> = (0..edges.len()).collect();
    fn resolve(f: &mut [usize], mut x: usize) -> usize {
        while f[x] != x {
            f[x] = f[f[x]];
            x = f[x];
        }
        x
    }
    loop {
        let mut merged_any = false;
        let mut order: Vec<usize> = (0..edges.len()).filter(|&i| alive[i]).collect();
        order.sort_by_key(|&i| (verts[i].len(), edges[i][0]));
        for p in order {
            if !alive[p] || verts[p].len() >= target {
                continue;
            }
            let mut best: Option<(usize, usize)> = None;
            let mut seen = Vec::new();
            for &v in &verts[p] {
                for &o in &owner[&v] {
                    let q = resolve(&mut forward, o);
                    if q == p || seen.contains(&q) {
                        continue;
                    }
                    seen.push(q);
                    let union = union_size(&verts[p], &verts[q]);
                    if union <= target && best.map_or(true, |(s, b)| (union, edges[q][0]) < (s, edges[b][0])) {
                        best = Some((union, q));
                    }
                }
            }
            if let Some((_, q)) = best {
                let (keep, gone) = if edges[p][0] < edges[q][0] { (p, q) } else { (q, p) };
                let moved = std::mem::take(&mut edges[gone]);
                edges[keep].extend(moved);
                edges[keep].sort_unstable();
                let moved_v = std::mem::take(&mut verts[gone]);
                let mut joined = std::mem::take(&mut verts[keep]);
                joined.extend(moved_v);
                joined.sort_unstable();
                joined.dedup();
                verts[keep] = joined;
                alive[gone] = false;
                forward[gone] = keep;
                merged_any = true;
            }
        }
        if !merged_any {
            break;
        }
    }
    edges
        .into_iter()
        .zip(alive)
        .filter_map(|(e, a)| a.then_some(e))
        .collect()
}

fn union_size(a: &[VertexId], b: &[VertexId]) -> usize {
    let (mut i, mut j, mut shared) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                shared += 1;
                i += 1;
                j += 1;
            }
        }
    }
    a.len() + b.len() - shared
}

/// Combinatorial map of a piece, extended with artificial vertices.
struct LocalMap {
    head: Vec<u32>,
    twin: Vec<u32>,
    /// Natural edge id, or `NONE` for artificial darts.
    natural: Vec<u32>,
    rot: Vec<Vec<u32>>,
    pos: Vec<u32>,
    natural_vertices: usize,
}

impl LocalMap {
    fn from_piece(graph: &EmbeddedGraph, edges: &[EdgeId]) -> Self {
        let verts = vertices_of(graph, edges);
        let in_piece = {
            let mut s = edges.to_vec();
            s.sort_unstable();
            s
        };
        let mut global_to_local: HashMap<DartId, u32> = HashMap::with_capacity(edges.len() * 2);
        let mut map = LocalMap {
            head: Vec::new(),
            twin: Vec::new(),
            natural: Vec::new(),
            rot: vec![Vec::new(); verts.len()],
            pos: Vec::new(),
            natural_vertices: verts.len(),
        };
        let mut global = Vec::new();
        for (lv, &v) in verts.iter().enumerate() {
            let (a, b) = graph.dart_range(v);
            for d in a..b {
                let e = graph.edge_of(d);
                if in_piece.binary_search(&e).is_err() {
                    continue;
                }
                let id = map.head.len() as u32;
                global_to_local.insert(d, id);
                global.push(d);
                map.head.push(verts.binary_search(&graph.head(d)).unwrap() as u32);
                map.natural.push(e);
                map.pos.push(map.rot[lv].len() as u32);
                map.rot[lv].push(id);
            }
        }
        map.twin = global.iter().map(|&d| global_to_local[&graph.twin(d)]).collect();
        map
    }

    fn tail(&self, d: u32) -> u32 {
        self.head[self.twin[d as usize] as usize]
    }

    fn next(&self, d: u32) -> u32 {
        let t = self.twin[d as usize] as usize;
        let v = self.head[d as usize] as usize;
        let p = self.pos[t] as usize + 1;
        let list = &self.rot[v];
        list[if p == list.len() { 0 } else { p }]
    }

    fn faces(&self) -> (Vec<Vec<u32>>, Vec<u32>) {
        let mut face_of = vec![NONE; self.head.len()];
        let mut faces = Vec::new();
        for s in 0..self.head.len() as u32 {
            if face_of[s as usize] != NONE {
                continue;
            }
            let f = faces.len() as u32;
            let mut cycle = Vec::new();
            let mut d = s;
            while face_of[d as usize] == NONE {
                face_of[d as usize] = f;
                cycle.push(d);
                d = self.next(d);
            }
            faces.push(cycle);
        }
        (faces, face_of)
    }

    fn add_dart_pair(&mut self, from: u32, to: u32) -> (u32, u32) {
        let a = self.head.len() as u32;
        let b = a + 1;
        self.head.extend([to, from]);
        self.twin.extend([b, a]);
        self.natural.extend([NONE, NONE]);
        self.pos.extend([0, 0]);
        (a, b)
    }

    /// Places an artificial vertex in every face whose length is not 3.
    fn triangulate(&mut self) {
        let (faces, face_of) = self.faces();
        let mut face_pos = vec![0u32; self.head.len()];
        for f in &faces {
            for (j, &d) in f.iter().enumerate() {
                face_pos[d as usize] = j as u32;
            }
        }
        let mut apex = vec![NONE; faces.len()];
        let mut slots: Vec<Vec<u32>> = Vec::new();
        for (fi, f) in faces.iter().enumerate() {
            if f.len() != 3 {
                apex[fi] = (self.rot.len() + slots.len()) as u32;
                slots.push(vec![NONE; f.len()]);
            }
        }
        if slots.is_empty() {
            return;
        }
        let first_apex = self.rot.len();
        let old_rot = std::mem::take(&mut self.rot);
        let mut rot = Vec::with_capacity(old_rot.len() + slots.len());
        for (v, list) in old_rot.iter().enumerate() {
            let mut new_list = Vec::with_capacity(list.len() * 2);
            for &o in list {
                new_list.push(o);
                let incoming = self.twin[o as usize];
                let f = face_of[incoming as usize] as usize;
                if apex[f] != NONE {
                    let (to_apex, from_apex) = self.add_dart_pair(v as u32, apex[f]);
                    new_list.push(to_apex);
                    slots[apex[f] as usize - first_apex][face_pos[incoming as usize] as usize] = from_apex;
                }
            }
            rot.push(new_list);
        }
        for s in slots {
            rot.push(s.into_iter().rev().collect());
        }
        for list in &rot {
            for (i, &d) in list.iter().enumerate() {
                self.pos[d as usize] = i as u32;
            }
        }
        self.rot = rot;
    }

    fn bfs(&self, root: u32) -> (Vec<u32>, Vec<u32>) {
        let mut depth = vec![NONE; self.rot.len()];
        let mut parent_dart = vec![NONE; self.rot.len()];
        let mut queue = VecDeque::from([root]);
        depth[root as usize] = 0;
        while let Some(u) = queue.pop_front() {
            for &d in &self.rot[u as usize] {
                let v = self.head[d as usize];
                if depth[v as usize] == NONE {
                    depth[v as usize] = depth[u as usize] + 1;
                    parent_dart[v as usize] = d;
                    queue.push_back(v);
                }
            }
        }
        (depth, parent_dart)
    }

    fn farthest(&self, depth: &[u32]) -> u32 {
        (0..depth.len() as u32)
            .max_by_key(|&v| (depth[v as usize], std::cmp::Reverse(v)))
            .unwrap()
    }
}

/// One fundamental-cycle split. Both returned sides are nonempty.
fn split_piece(graph: &EmbeddedGraph, piece: &[EdgeId]) -> (Vec<EdgeId>, Vec<EdgeId>) {
    if let Some(split) = cycle_split(graph, piece) {
        return split;
    }
    // fallback: halves of a BFS edge order
    let mut order = bfs_edge_order(graph, piece);
    let b = order.split_off(order.len() / 2);
    (order, b)
}

fn bfs_edge_order(graph: &EmbeddedGraph, piece: &[EdgeId]) -> Vec<EdgeId> {
    let map = LocalMap::from_piece(graph, piece);
    let (depth, _) = map.bfs(0);
    let mut order: Vec<u32> = (0..map.head.len() as u32)
        .filter(|&d| d < map.twin[d as usize])
        .collect();
    order.sort_by_key(|&d| {
        let (a, b) = (depth[map.tail(d) as usize], depth[map.head[d as usize] as usize]);
        (a.min(b), a.max(b), d)
    });
    order.into_iter().map(|d| map.natural[d as usize]).collect()
}

fn cycle_split(graph: &EmbeddedGraph, piece: &[EdgeId]) -> Option<(Vec<EdgeId>, Vec<EdgeId>)> {
    let mut map = LocalMap::from_piece(graph, piece);
    map.triangulate();
    let (faces, face_of) = map.faces();
    debug_assert!(faces.iter().all(|f| f.len() == 3));

    // root near the center of a double sweep
    let (d0, _) = map.bfs(0);
    let x = map.farthest(&d0);
    let (dx, px) = map.bfs(x);
    let y = map.farthest(&dx);
    let mut root = y;
    for _ in 0..dx[y as usize] / 2 {
        root = map.tail(px[root as usize]);
    }
    let (depth, parent_dart) = map.bfs(root);
    let is_tree = |d: u32| {
        let t = map.twin[d as usize];
        parent_dart[map.head[d as usize] as usize] == d || parent_dart[map.head[t as usize] as usize] == t
    };

    // dual spanning tree over non-tree edges
    let nf = faces.len();
    let mut dual_parent = vec![NONE; nf];
    let mut via = vec![NONE; nf];
    let mut order = Vec::with_capacity(nf);
    dual_parent[0] = 0;
    order.push(0u32);
    let mut head_idx = 0;
    while head_idx < order.len() {
        let f = order[head_idx] as usize;
        head_idx += 1;
        for &d in &faces[f] {
            if is_tree(d) {
                continue;
            }
            let g = face_of[map.twin[d as usize] as usize] as usize;
            if dual_parent[g] == NONE {
                dual_parent[g] = f as u32;
                via[g] = d;
                order.push(g as u32);
            }
        }
    }
    if order.len() != nf {
        return None;
    }

    let mut weight = vec![0u64; nf];
    for d in 0..map.head.len() as u32 {
        if map.natural[d as usize] != NONE && d < map.twin[d as usize] {
            weight[face_of[d as usize] as usize] += 1;
        }
    }
    let total: u64 = weight.iter().sum();
    let mut sub = weight.clone();
    for &f in order.iter().skip(1).rev() {
        sub[dual_parent[f as usize] as usize] += sub[f as usize];
    }

    let natural_on_path = |mut a: u32, mut b: u32| -> u64 {
        let nat = |v: u32| (v as usize) < map.natural_vertices;
        let mut count = 0;
        while depth[a as usize] > depth[b as usize] {
            count += nat(a) as u64;
            a = map.tail(parent_dart[a as usize]);
        }
        while depth[b as usize] > depth[a as usize] {
            count += nat(b) as u64;
            b = map.tail(parent_dart[b as usize]);
        }
        while a != b {
            count += nat(a) as u64 + nat(b) as u64;
            a = map.tail(parent_dart[a as usize]);
            b = map.tail(parent_dart[b as usize]);
        }
        count + nat(a) as u64
    };

    let limit = (2 * total).div_ceil(3);
    let mut best: Option<((u64, u64, u32), u32)> = None;
    let mut fallback: Option<((u64, u32), u32)> = None;
    for &f in order.iter().skip(1) {
        let w = sub[f as usize];
        if w == 0 || w == total {
            continue;
        }
        let balance = w.max(total - w);
        if fallback.map_or(true, |(k, _)| (balance, f) < k) {
            fallback = Some(((balance, f), f));
        }
        if balance <= limit {
            let d = via[f as usize];
            let len = natural_on_path(map.tail(d), map.head[d as usize]);
            let key = (len, balance, f);
            if best.map_or(true, |(k, _)| key < k) {
                best = Some((key, f));
            }
        }
    }
    let chosen = best.map(|(_, f)| f).or(fallback.map(|(_, f)| f))?;

    let mut inside = vec![false; nf];
    let mut children: Vec<Vec<u32>> = vec![Vec::new(); nf];
    for &f in order.iter().skip(1) {
        children[dual_parent[f as usize] as usize].push(f);
    }
    let mut stack = vec![chosen];
    while let Some(f) = stack.pop() {
        inside[f as usize] = true;
        stack.extend(&children[f as usize]);
    }
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for d in 0..map.head.len() as u32 {
        let e = map.natural[d as usize];
        if e != NONE && d < map.twin[d as usize] {
            if inside[face_of[d as usize] as usize] {
                a.push(e);
            } else {
                b.push(e);
            }
        }
    }
    (!a.is_empty() && !b.is_empty()).then_some((a, b))
}
