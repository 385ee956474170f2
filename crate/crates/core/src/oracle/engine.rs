//! Table layout and construction shared by both oracles.
//!
//! Every non-root region R' with parent P stores, for each vertex u of P
//! outside R', the pattern of u on the hole of R' containing it together with
//! dist(u, v_h) (item 2). Every hole h of an internal region stores, for each
//! of its patterns p and each child region, the induced pattern on the child
//! hole enclosing h together with dist(p, v_h') (item 3). Leaf holes store
//! pattern-to-vertex rows; leaves store all-pairs tables.
//!
//! With a single level below the root this is exactly the flat oracle: item 2
//! holds items (ii)/(iii), the leaf rows are item (i), the leaf all-pairs
//! tables are item (iv).

use rayon::prelude::*;

use crate::codec::{Decoder, Encoder};
use crate::decomposition::{enclosing_hole, inside_holes_within, DecompositionTree, Region, RegionId, NO_HOLE};
use crate::error::{Error, Result};
use crate::graph::{BoundedBfs, EmbeddedGraph, VertexId};
use crate::oracle::{QueryTrace, StepKind, TraceStep};
use crate::patterns::{PatternRegistry, WalkDistances};

pub(crate) const NONE: u32 = u32::MAX;

/// Counts of patterns produced during a build.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BuildAudit {
    /// Vertex patterns extracted (one per stored item-2 tuple).
    pub vertex_patterns: u64,
    /// Induced patterns computed (one per stored item-3 tuple).
    pub induced_patterns: u64,
    /// Entries range-checked across both kinds.
    pub entries: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct Engine {
    pub n: usize,
    pub depth: usize,
    pub region_parent: Vec<u32>,
    pub region_ordinal: Vec<u32>,
    pub region_children: Vec<u32>,
    pub region_size: Vec<u32>,
    /// Offsets into the hole arrays, per region.
    pub region_holes: Vec<u32>,
    pub hole_canonical: Vec<u32>,
    /// First global pattern id of each hole (one extra trailing entry).
    pub hole_patterns: Vec<u32>,
    pub pattern_hole: Vec<u32>,
    /// Per level: vertex to (containing region, local index) lists.
    pub member_offsets: Vec<Vec<u32>>,
    pub member_region: Vec<Vec<u32>>,
    pub member_local: Vec<Vec<u32>>,
    pub item2_offsets: Vec<u64>,
    pub item2_pattern: Vec<u32>,
    pub item2_dist: Vec<u32>,
    pub item3_offsets: Vec<u64>,
    pub item3_pattern: Vec<u32>,
    pub item3_dist: Vec<i32>,
    pub row_offsets: Vec<u64>,
    pub rows: Vec<i32>,
    pub apsp_offsets: Vec<u64>,
    pub apsp: Vec<u32>,
}

struct Scratch {
    bfs: BoundedBfs,
    mask: Vec<bool>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            bfs: BoundedBfs::new(n),
            mask: vec![false; n],
        }
    }

    fn set(&mut self, vs: &[VertexId], on: bool) {
        for &v in vs {
            self.mask[v as usize] = on;
        }
    }
}

/// Output of processing one region.
#[derive(Default)]
struct RegionOut {
    hole_counts: Vec<u32>,
    item2_local: Vec<u32>,
    item2_dist: Vec<u32>,
    /// Per hole: (child hole per child ordinal, local ids, distances).
    item3: Vec<(Vec<u32>, Vec<u32>, Vec<i32>)>,
    rows: Vec<Vec<i32>>,
    apsp: Vec<u32>,
    children: Vec<Vec<PatternRegistry>>,
    audit: BuildAudit,
}

fn fresh_registries(region: &Region) -> Vec<PatternRegistry> {
    region.holes.iter().map(|h| PatternRegistry::new(h.len() - 1)).collect()
}

/// Position of `v` in the sorted target list (identity for the full set).
fn position(targets: &[VertexId], full: bool, v: VertexId) -> usize {
    if full {
        v as usize
    } else {
        targets.binary_search(&v).expect("target vertex")
    }
}

fn all_pairs(graph: &EmbeddedGraph, region: &Region, scratch: &mut Scratch) -> Vec<u32> {
    let vs = &region.vertices;
    scratch.set(vs, true);
    let mut out = Vec::with_capacity(vs.len() * vs.len());
    for &x in vs {
        let dist = scratch.bfs.run(graph, x, &scratch.mask, vs.len());
        out.extend(vs.iter().map(|&y| dist[y as usize]));
    }
    scratch.set(vs, false);
    out
}

fn process_region(
    graph: &EmbeddedGraph,
    tree: &DecompositionTree,
    region: &Region,
    mut regs: Vec<PatternRegistry>,
    is_leaf: bool,
    scratch: &mut Scratch,
) -> Result<RegionOut> {
    let n = graph.vertex_count();
    let parent = tree.region(region.parent.expect("non-root region"));
    let targets = &parent.vertices;
    let full = targets.len() == n;
    let mut out = RegionOut::default();

    let walks: Vec<WalkDistances> = if full {
        region.holes.iter().map(|h| WalkDistances::full(graph, h.walk())).collect()
    } else {
        scratch.set(targets, true);
        let w = region
            .holes
            .iter()
            .map(|h| WalkDistances::bounded(graph, h.walk(), targets, &scratch.mask, &mut scratch.bfs))
            .collect();
        scratch.set(targets, false);
        w
    };

    // item 2
    let inside = inside_holes_within(graph, region, targets)?;
    let mut column = Vec::new();
    let mut buf = Vec::new();
    let store_item2 = region.vertices.len() < targets.len();
    let mut local = vec![NONE; if store_item2 { targets.len() } else { 0 }];
    let mut dist = vec![NONE; local.len()];
    let mut hole_of = vec![NONE; local.len()];
    for (x, &h) in inside.iter().enumerate() {
        if h == NO_HOLE {
            continue;
        }
        walks[h as usize].column_into(x, &mut column);
        let id = regs[h as usize].intern_column(&column, &mut buf)?;
        local[x] = id;
        dist[x] = column[0];
        hole_of[x] = h;
        out.audit.vertex_patterns += 1;
        out.audit.entries += column.len().saturating_sub(1) as u64;
    }
    out.hole_counts = regs.iter().map(|r| r.len() as u32).collect();
    let mut hole_base = Vec::with_capacity(regs.len());
    let mut acc = 0u32;
    for &c in &out.hole_counts {
        hole_base.push(acc);
        acc += c;
    }
    for (l, &h) in local.iter_mut().zip(&hole_of) {
        if h != NONE {
            *l += hole_base[h as usize];
        }
    }
    out.item2_local = local;
    out.item2_dist = dist;

    if is_leaf {
        for (h, reg) in regs.iter().enumerate() {
            let wd = &walks[h];
            let cols: Vec<usize> = region.vertices.iter().map(|&x| position(targets, full, x)).collect();
            let mut rows = Vec::with_capacity(reg.len() * cols.len());
            for p in reg.iter() {
                for &c in &cols {
                    rows.push(p.distance_with(|i| wd.get(i, c)));
                }
            }
            out.rows.push(rows);
        }
        out.apsp = all_pairs(graph, region, scratch);
        return Ok(out);
    }

    let children: Vec<&Region> = region.children.iter().map(|&c| tree.region(c)).collect();
    let mut child_regs: Vec<Vec<PatternRegistry>> = children.iter().map(|c| fresh_registries(c)).collect();
    let nc = children.len();
    for (h, reg) in regs.iter_mut().enumerate() {
        let hole = &region.holes[h];
        let count = reg.len();
        let mut child_hole = vec![NONE; nc];
        let mut ids = vec![NONE; count * nc];
        let mut dists = vec![0i32; count * nc];
        if count > 0 {
            let patterns: Vec<_> = reg.iter().collect();
            let wd = &walks[h];
            for (c, child) in children.iter().enumerate() {
                let target = enclosing_hole(graph, hole, child).ok_or(Error::InconsistentEmbedding {
                    vertex: hole.canonical_vertex(),
                })?;
                child_hole[c] = target as u32;
                let child_walk = child.holes[target].walk();
                let cols: Vec<usize> = child_walk.iter().map(|&b| position(targets, full, b)).collect();
                let w = hole.len();
                // matrix[i * |child walk| + j] = dist(b_i, b'_j)
                let mut matrix = Vec::with_capacity(w * cols.len());
                for i in 0..w {
                    matrix.extend(cols.iter().map(|&c| wd.get(i, c)));
                }
                let creg = &mut child_regs[c][target];
                let mut from_p = vec![0i32; cols.len()];
                for (pi, p) in patterns.iter().enumerate() {
                    for (j, slot) in from_p.iter_mut().enumerate() {
                        *slot = p.distance_with(|i| matrix[i * cols.len() + j]);
                    }
                    ids[pi * nc + c] = creg.intern_column(&from_p, &mut buf)?;
                    dists[pi * nc + c] = from_p[0];
                    out.audit.induced_patterns += 1;
                    out.audit.entries += from_p.len().saturating_sub(1) as u64;
                }
            }
        }
        out.item3.push((child_hole, ids, dists));
    }
    out.children = child_regs;
    Ok(out)
}

impl Engine {
    pub fn build(graph: &EmbeddedGraph, tree: &DecompositionTree) -> Result<(Engine, BuildAudit)> {
        let n = graph.vertex_count();
        let depth = tree.depth();
        let regions = tree.regions();
        let mut e = Engine {
            n,
            depth,
            ..Engine::default()
        };
        let mut holes_acc = 0u32;
        e.region_holes.push(0);
        for r in regions {
            e.region_parent.push(r.parent.unwrap_or(NONE));
            let ordinal = r
                .parent
                .map(|p| tree.region(p).children.iter().position(|&c| c == r.id).unwrap() as u32)
                .unwrap_or(0);
            e.region_ordinal.push(ordinal);
            e.region_children.push(r.children.len() as u32);
            e.region_size.push(r.vertices.len() as u32);
            holes_acc += r.holes.len() as u32;
            e.region_holes.push(holes_acc);
            e.hole_canonical.extend(r.holes.iter().map(|h| h.canonical_vertex()));
        }
        for level in 0..=depth {
            let mut offsets = Vec::with_capacity(n + 1);
            let mut reg = Vec::new();
            let mut loc = Vec::new();
            offsets.push(0);
            for v in 0..n as VertexId {
                for &r in tree.regions_containing(level, v) {
                    reg.push(r);
                    loc.push(tree.region(r).local_index(v).unwrap() as u32);
                }
                offsets.push(reg.len() as u32);
            }
            e.member_offsets.push(offsets);
            e.member_region.push(reg);
            e.member_local.push(loc);
        }

        let mut audit = BuildAudit::default();
        let mut hole_counts: Vec<u32> = Vec::with_capacity(holes_acc as usize);
        let mut child_holes: Vec<Vec<u32>> = Vec::with_capacity(holes_acc as usize);
        e.item2_offsets.push(0);
        e.item3_offsets.push(0);
        e.row_offsets.push(0);
        e.apsp_offsets.push(0);
        // root
        e.item2_offsets.push(0);
        if depth == 0 {
            let mut scratch = Scratch::new(n);
            e.apsp = all_pairs(graph, tree.root(), &mut scratch);
        }
        e.apsp_offsets.push(e.apsp.len() as u64);

        let mut incoming: Vec<Vec<PatternRegistry>> = tree.level(1.min(depth)).iter().map(|&r| fresh_registries(tree.region(r))).collect();
        for level in 1..=depth {
            let ids = tree.level(level);
            let is_leaf = level == depth;
            let outs: Vec<RegionOut> = ids
                .par_iter()
                .zip(std::mem::take(&mut incoming))
                .map_init(
                    || Scratch::new(n),
                    |scratch, (&id, regs)| process_region(graph, tree, tree.region(id), regs, is_leaf, scratch),
                )
                .collect::<Result<_>>()?;
            for out in outs {
                audit.vertex_patterns += out.audit.vertex_patterns;
                audit.induced_patterns += out.audit.induced_patterns;
                audit.entries += out.audit.entries;
                hole_counts.extend(&out.hole_counts);
                e.item2_pattern.extend(&out.item2_local);
                e.item2_dist.extend(&out.item2_dist);
                e.item2_offsets.push(e.item2_pattern.len() as u64);
                for (h, count) in out.hole_counts.iter().enumerate() {
                    if is_leaf {
                        e.rows.extend(&out.rows[h]);
                        child_holes.push(Vec::new());
                    } else {
                        let (ch, ids, dists) = &out.item3[h];
                        debug_assert_eq!(ids.len(), *count as usize * ch.len());
                        e.item3_pattern.extend(ids);
                        e.item3_dist.extend(dists);
                        child_holes.push(ch.clone());
                    }
                    e.item3_offsets.push(e.item3_pattern.len() as u64);
                    e.row_offsets.push(e.rows.len() as u64);
                }
                e.apsp.extend(&out.apsp);
                e.apsp_offsets.push(e.apsp.len() as u64);
                incoming.extend(out.children);
            }
        }

        // global pattern ids
        e.hole_patterns.push(0);
        for (h, &c) in hole_counts.iter().enumerate() {
            e.hole_patterns.push(e.hole_patterns[h] + c);
            e.pattern_hole.extend(std::iter::repeat(h as u32).take(c as usize));
        }
        for r in 1..regions.len() {
            let base = e.hole_patterns[e.region_holes[r] as usize];
            let (a, b) = (e.item2_offsets[r] as usize, e.item2_offsets[r + 1] as usize);
            for p in &mut e.item2_pattern[a..b] {
                if *p != NONE {
                    *p += base;
                }
            }
        }
        for r in 1..regions.len() {
            let region = &regions[r];
            let nc = region.children.len();
            for h in e.region_holes[r]..e.region_holes[r + 1] {
                let ch = &child_holes[h as usize];
                if ch.is_empty() {
                    continue;
                }
                let (a, b) = (e.item3_offsets[h as usize] as usize, e.item3_offsets[h as usize + 1] as usize);
                for (k, p) in e.item3_pattern[a..b].iter_mut().enumerate() {
                    let c = k % nc;
                    let child = region.children[c] as usize;
                    let global_hole = e.region_holes[child] + ch[c];
                    *p += e.hole_patterns[global_hole as usize];
                }
            }
        }
        Ok((e, audit))
    }

    fn members(&self, level: usize, v: VertexId) -> (&[u32], &[u32]) {
        let offs = &self.member_offsets[level];
        let (a, b) = (offs[v as usize] as usize, offs[v as usize + 1] as usize);
        (&self.member_region[level][a..b], &self.member_local[level][a..b])
    }

    pub fn query(&self, s: VertexId, t: VertexId, mut trace: Option<&mut QueryTrace>) -> u32 {
        if s == t {
            return 0;
        }
        let k = self.depth;
        let mut lookups = 0;
        let step = |trace: &mut Option<&mut QueryTrace>, kind, level, region, pattern: Option<u32>, d: i64| {
            if let Some(tr) = trace.as_deref_mut() {
                tr.steps.push(TraceStep {
                    kind,
                    level,
                    region,
                    pattern,
                    canonical: pattern.map(|p| self.hole_canonical[self.pattern_hole[p as usize] as usize]),
                    accumulated: d,
                });
            }
        };

        // deepest level with a region holding both s and t
        let mut level = k;
        let mut below: (&[u32], &[u32]) = (&[], &[]);
        let (common, ls, lt) = loop {
            if level == 0 {
                break (0, s, t);
            }
            let (rs, ls) = self.members(level, s);
            let (rt, lt) = self.members(level, t);
            lookups += 2;
            if let Some((i, j)) = first_common(rs, rt) {
                break (rs[i], ls[i], lt[j]);
            }
            below = (rt, lt);
            level -= 1;
        };
        if level == k {
            let size = self.region_size[common as usize] as u64;
            let d = self.apsp[(self.apsp_offsets[common as usize] + ls as u64 * size + lt as u64) as usize];
            lookups += 1;
            step(&mut trace, StepKind::AllPairs, level, common, None, d as i64);
            if let Some(tr) = trace {
                tr.lookups = lookups;
            }
            return d;
        }

        let child_of = |list: (&[u32], &[u32]), parent: u32| -> (u32, u32) {
            let i = list.0.iter().position(|&r| self.region_parent[r as usize] == parent).expect("nested chain");
            (list.0[i], list.1[i])
        };
        let (mut cur, mut lt) = child_of(below, common);
        let off = (self.item2_offsets[cur as usize] + ls as u64) as usize;
        let mut p = self.item2_pattern[off];
        let mut d = self.item2_dist[off] as i64;
        lookups += 1;
        step(&mut trace, StepKind::VertexPattern, level + 1, cur, Some(p), d);
        for j in level + 1..k {
            let (next, next_lt) = child_of(self.members(j + 1, t), cur);
            let h = self.pattern_hole[p as usize] as usize;
            let idx = (p - self.hole_patterns[h]) as u64;
            let a = (self.item3_offsets[h]
                + idx * self.region_children[cur as usize] as u64
                + self.region_ordinal[next as usize] as u64) as usize;
            p = self.item3_pattern[a];
            d += self.item3_dist[a] as i64;
            lookups += 3;
            cur = next;
            lt = next_lt;
            step(&mut trace, StepKind::InducedPattern, j + 1, cur, Some(p), d);
        }
        let h = self.pattern_hole[p as usize] as usize;
        let idx = (p - self.hole_patterns[h]) as u64;
        d += self.rows[(self.row_offsets[h] + idx * self.region_size[cur as usize] as u64 + lt as u64) as usize] as i64;
        lookups += 2;
        step(&mut trace, StepKind::PatternRow, k, cur, Some(p), d);
        if let Some(tr) = trace {
            tr.lookups = lookups;
        }
        d as u32
    }

    pub fn encode(&self, enc: &mut Encoder) {
        enc.u64(self.n as u64);
        enc.u64(self.depth as u64);
        for v in [
            &self.region_parent,
            &self.region_ordinal,
            &self.region_children,
            &self.region_size,
            &self.region_holes,
            &self.hole_canonical,
            &self.hole_patterns,
            &self.pattern_hole,
        ] {
            enc.u32s(v);
        }
        for level in 0..=self.depth {
            enc.u32s(&self.member_offsets[level]);
            enc.u32s(&self.member_region[level]);
            enc.u32s(&self.member_local[level]);
        }
        enc.u64s(&self.item2_offsets);
        enc.u32s(&self.item2_pattern);
        enc.u32s(&self.item2_dist);
        enc.u64s(&self.item3_offsets);
        enc.u32s(&self.item3_pattern);
        enc.i32s(&self.item3_dist);
        enc.u64s(&self.row_offsets);
        enc.i32s(&self.rows);
        enc.u64s(&self.apsp_offsets);
        enc.u32s(&self.apsp);
    }

    pub fn decode(dec: &mut Decoder<'_>) -> Result<Engine> {
        let n = dec.u64()? as usize;
        let depth = dec.u64()? as usize;
        if depth > 64 {
            return Err(Error::Format(format!("implausible depth {depth}")));
        }
        let mut e = Engine {
            n,
            depth,
            region_parent: dec.u32s()?,
            region_ordinal: dec.u32s()?,
            region_children: dec.u32s()?,
            region_size: dec.u32s()?,
            region_holes: dec.u32s()?,
            hole_canonical: dec.u32s()?,
            hole_patterns: dec.u32s()?,
            pattern_hole: dec.u32s()?,
            ..Engine::default()
        };
        for _ in 0..=depth {
            e.member_offsets.push(dec.u32s()?);
            e.member_region.push(dec.u32s()?);
            e.member_local.push(dec.u32s()?);
        }
        e.item2_offsets = dec.u64s()?;
        e.item2_pattern = dec.u32s()?;
        e.item2_dist = dec.u32s()?;
        e.item3_offsets = dec.u64s()?;
        e.item3_pattern = dec.u32s()?;
        e.item3_dist = dec.i32s()?;
        e.row_offsets = dec.u64s()?;
        e.rows = dec.i32s()?;
        e.apsp_offsets = dec.u64s()?;
        e.apsp = dec.u32s()?;
        e.validate()?;
        Ok(e)
    }

    /// Structural checks so that a decoded oracle cannot index out of bounds
    /// through its offset tables.
    fn validate(&self) -> Result<()> {
        let regions = self.region_parent.len();
        let holes = self.hole_canonical.len();
        let bad = |what: &str| Err(Error::Format(format!("inconsistent {what}")));
        let ends_at = |offs: &[u64], len: usize| offs.windows(2).all(|w| w[0] <= w[1]) && offs.last() == Some(&(len as u64));
        if regions == 0
            || [&self.region_ordinal, &self.region_children, &self.region_size].iter().any(|v| v.len() != regions)
            || self.region_holes.len() != regions + 1
            || self.region_holes.last() != Some(&(holes as u32))
        {
            return bad("region tables");
        }
        if self.hole_patterns.len() != holes + 1 || self.hole_patterns.last() != Some(&(self.pattern_hole.len() as u32)) {
            return bad("hole tables");
        }
        for level in 0..=self.depth {
            let offs = &self.member_offsets[level];
            if offs.len() != self.n + 1
                || offs.last() != Some(&(self.member_region[level].len() as u32))
                || self.member_local[level].len() != self.member_region[level].len()
                || self.member_region[level].iter().any(|&r| r as usize >= regions)
            {
                return bad("membership lists");
            }
        }
        if self.item2_offsets.len() != regions + 1
            || !ends_at(&self.item2_offsets, self.item2_pattern.len())
            || self.item2_dist.len() != self.item2_pattern.len()
            || self.item3_offsets.len() != holes + 1
            || !ends_at(&self.item3_offsets, self.item3_pattern.len())
            || self.item3_dist.len() != self.item3_pattern.len()
            || self.row_offsets.len() != holes + 1
            || !ends_at(&self.row_offsets, self.rows.len())
            || self.apsp_offsets.len() != regions + 1
            || !ends_at(&self.apsp_offsets, self.apsp.len())
        {
            return bad("item tables");
        }
        let patterns = self.pattern_hole.len() as u32;
        if self.item2_pattern.iter().chain(&self.item3_pattern).any(|&p| p != NONE && p >= patterns) {
            return bad("pattern references");
        }
        Ok(())
    }

    /// Words in the offset and topology tables.
    pub fn index_words(&self, membership_is_index: bool) -> u64 {
        let mut w = (self.region_parent.len() * 4
            + self.region_holes.len()
            + self.hole_canonical.len()
            + self.hole_patterns.len()
            + self.pattern_hole.len()) as u64;
        w += (self.item2_offsets.len() + self.item3_offsets.len() + self.row_offsets.len() + self.apsp_offsets.len()) as u64;
        for level in 0..=self.depth {
            w += (self.member_offsets[level].len() + self.member_local[level].len()) as u64;
            if membership_is_index || level == 0 {
                w += self.member_region[level].len() as u64;
            }
        }
        w
    }

    /// Item-1 words: (vertex, level, containing region) entries below the root.
    pub fn membership_words(&self) -> u64 {
        (1..=self.depth).map(|l| self.member_region[l].len() as u64).sum()
    }

    /// Changes one stored item-3 distance (falls back to a leaf row when the
    /// oracle has no item 3). Returns false if there is nothing to corrupt.
    pub fn corrupt_one_entry(&mut self) -> bool {
        if let Some(d) = self.item3_dist.first_mut() {
            *d += 1;
            true
        } else if let Some(d) = self.rows.first_mut() {
            *d += 1;
            true
        } else {
            false
        }
    }
}

impl Engine {
    /// Item-2 tuple (pattern id, dist(u, v_h)) of `u` for a non-root region.
    pub fn item2(&self, region: RegionId, u: VertexId) -> Option<(u32, u32)> {
        let parent = *self.region_parent.get(region as usize)?;
        if parent == NONE {
            return None;
        }
        let level = (0..=self.depth).find(|&l| self.members(l, u).0.contains(&parent))?;
        let (rs, ls) = self.members(level, u);
        let local = ls[rs.iter().position(|&r| r == parent)?] as u64;
        let (a, b) = (self.item2_offsets[region as usize], self.item2_offsets[region as usize + 1]);
        if a + local >= b {
            return None;
        }
        let i = (a + local) as usize;
        (self.item2_pattern[i] != NONE).then(|| (self.item2_pattern[i], self.item2_dist[i]))
    }

    /// Item-3 tuple (induced pattern id, dist(p, v_h')) of pattern `p` for the
    /// child region `child`.
    pub fn item3(&self, p: u32, child: RegionId) -> Option<(u32, i32)> {
        let h = *self.pattern_hole.get(p as usize)? as usize;
        let region = self.hole_region(h);
        if self.region_parent.get(child as usize) != Some(&region) {
            return None;
        }
        let idx = (p - self.hole_patterns[h]) as u64;
        let a = self.item3_offsets[h] + idx * self.region_children[region as usize] as u64 + self.region_ordinal[child as usize] as u64;
        (a < self.item3_offsets[h + 1]).then(|| (self.item3_pattern[a as usize], self.item3_dist[a as usize]))
    }

    /// Region owning global hole `h`.
    pub fn hole_region(&self, h: usize) -> RegionId {
        (self.region_holes.partition_point(|&x| x as usize <= h) - 1) as RegionId
    }
}

fn first_common(a: &[u32], b: &[u32]) -> Option<(usize, usize)> {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return Some((i, j)),
        }
    }
    None
}
