//! Combinatorial planar maps stored as rotation systems.
//!
//! A map has `2 * ne` half-edges; half-edge `h` and `h ^ 1` are twins and
//! belong to edge `h / 2`. Around every vertex the outgoing half-edges form a
//! counterclockwise cycle (`next` / `prev`). Faces are traced with the face
//! on the left: the successor of `h` along its face is `prev[twin(h)]`, so
//! inner faces of a plane drawing are walked counterclockwise.
//!
//! Vertices carry a `u32` label that survives submap extraction, and edges
//! carry a persistent id for the same reason. Algorithms index vertices and
//! half-edges densely; labels are for IO and for matching a submap against
//! its host.

mod ops;
mod triangulation;
mod validate;

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

pub use ops::{block_containing, collapse_parallel, fill_enclosed};
pub use triangulation::{RootedTriangulation, Triangulation};
pub use validate::{validate_map, validate_triangulation, Rule, ValidationReport, Violation, Witness};

/// Sentinel for "no half-edge".
pub const NONE: usize = usize::MAX;

/// Structural errors: the input does not describe a rotation system.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MapError {
    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),
    #[error("half-edge {0} does not appear exactly once in the rotation of its origin")]
    BadRotation(usize),
    #[error("duplicate vertex label {0}")]
    DuplicateLabel(u32),
    #[error("neighbor lists are not symmetric between labels {0} and {1}")]
    Asymmetric(u32, u32),
    #[error("outer face does not match the given boundary walk")]
    BadOuterFace,
    #[error("seeds are not contained in a common block")]
    SeedsNotCoBlocked,
    #[error("seed set is empty or names an unknown vertex")]
    BadSeeds,
    #[error("submap is not contained in the host map")]
    NotSubmap,
    #[error("multiplicity exceeds 2 between labels {0} and {1}")]
    MultiplicityExceeds2(u32, u32),
    #[error("loop at label {0}")]
    Loop(u32),
}

/// A connected plane multigraph given by its rotation system and a
/// designated outer face.
#[derive(Debug, Clone)]
pub struct PlanarMap {
    labels: Vec<u32>,
    first: Vec<usize>,
    origin: Vec<usize>,
    next: Vec<usize>,
    prev: Vec<usize>,
    edge_ids: Vec<u32>,
    outer: Option<usize>,
}

/// Entry of a neighbor list: neighbor index plus an optional pairing tag used
/// to tell parallel edges apart.
pub type NeighborEntry = (usize, Option<u32>);

impl PlanarMap {
    /// Builds a map from explicit edges and per-vertex counterclockwise lists
    /// of outgoing half-edges. Edge `e` runs `edges[e][0] -> edges[e][1]` as
    /// half-edge `2e`.
    pub fn from_rotation(
        labels: Vec<u32>,
        edges: &[[usize; 2]],
        edge_ids: Option<Vec<u32>>,
        rotation: &[Vec<usize>],
        outer: Option<usize>,
    ) -> Result<Self, MapError> {
        let nv = labels.len();
        if rotation.len() != nv {
            return Err(MapError::VertexOutOfRange(rotation.len()));
        }
        let mut seen = BTreeMap::new();
        for &l in &labels {
            if seen.insert(l, ()).is_some() {
                return Err(MapError::DuplicateLabel(l));
            }
        }
        let nh = 2 * edges.len();
        let mut origin = vec![NONE; nh];
        for (e, &[a, b]) in edges.iter().enumerate() {
            if a >= nv {
                return Err(MapError::VertexOutOfRange(a));
            }
            if b >= nv {
                return Err(MapError::VertexOutOfRange(b));
            }
            origin[2 * e] = a;
            origin[2 * e + 1] = b;
        }
        let mut next = vec![NONE; nh];
        let mut prev = vec![NONE; nh];
        let mut first = vec![NONE; nv];
        for (v, rot) in rotation.iter().enumerate() {
            for (i, &h) in rot.iter().enumerate() {
                if h >= nh || origin[h] != v || next[h] != NONE {
                    return Err(MapError::BadRotation(h.min(nh)));
                }
                let n = rot[(i + 1) % rot.len()];
                next[h] = n;
            }
            for &h in rot {
                prev[next[h]] = h;
            }
            first[v] = rot.first().copied().unwrap_or(NONE);
        }
        if let Some(h) = next.iter().position(|&n| n == NONE) {
            return Err(MapError::BadRotation(h));
        }
        if let Some(o) = outer {
            if o >= nh {
                return Err(MapError::BadOuterFace);
            }
        }
        let edge_ids = edge_ids.unwrap_or_else(|| (0..edges.len() as u32).collect());
        if edge_ids.len() != edges.len() {
            return Err(MapError::BadRotation(nh));
        }
        Ok(Self { labels, first, origin, next, prev, edge_ids, outer })
    }

    /// Builds a map from counterclockwise neighbor lists (indices into
    /// `labels`). Entries with equal tags on both endpoints are paired; an
    /// untagged entry must be the only untagged occurrence of that neighbor
    /// on both sides. Edge ids are assigned in scan order.
    ///
    /// The outer face is given by its boundary walk (vertex indices, with an
    /// optional tag on each step); it must match the face walk starting at the
    /// half-edge from `walk[0]` to `walk[1]`.
    pub fn from_neighbor_lists(
        labels: Vec<u32>,
        lists: &[Vec<NeighborEntry>],
        outer_walk: &[NeighborEntry],
    ) -> Result<Self, MapError> {
        let nv = labels.len();
        if lists.len() != nv {
            return Err(MapError::VertexOutOfRange(lists.len()));
        }
        // Pair entries: key (min, max, tag) -> positions.
        let mut pending: BTreeMap<(usize, usize, Option<u32>), Vec<(usize, usize)>> = BTreeMap::new();
        for (u, list) in lists.iter().enumerate() {
            for (pos, &(v, tag)) in list.iter().enumerate() {
                if v >= nv {
                    return Err(MapError::VertexOutOfRange(v));
                }
                pending.entry((u.min(v), u.max(v), tag)).or_default().push((u, pos));
            }
        }
        let mut edges = Vec::new();
        let mut edge_tags = Vec::new();
        let mut half_at: Vec<Vec<usize>> = lists.iter().map(|l| vec![NONE; l.len()]).collect();
        // Scan order keeps edge numbering deterministic.
        for (u, list) in lists.iter().enumerate() {
            for (pos, &(v, tag)) in list.iter().enumerate() {
                if half_at[u][pos] != NONE {
                    continue;
                }
                let slots = &pending[&(u.min(v), u.max(v), tag)];
                let expected = 2;
                if slots.len() != expected {
                    return Err(MapError::Asymmetric(labels[u], labels[v]));
                }
                let other = if slots[0] == (u, pos) { slots[1] } else { slots[0] };
                if u != v && other.0 != v {
                    return Err(MapError::Asymmetric(labels[u], labels[v]));
                }
                let e = edges.len();
                edges.push([u, v]);
                edge_tags.push(tag);
                half_at[u][pos] = 2 * e;
                half_at[other.0][other.1] = 2 * e + 1;
            }
        }
        let mut map = Self::from_rotation(labels, &edges, None, &half_at, None)?;
        map.outer = Some(map.locate_walk(outer_walk, &edge_tags)?);
        Ok(map)
    }

    /// Builds a disk triangulation from counterclockwise triangles. Every
    /// vertex must see its incident triangles as one fan; the outer face is
    /// the face on the far side of the edges used by a single triangle.
    pub fn from_triangles(labels: Vec<u32>, faces: &[[usize; 3]]) -> Result<Self, MapError> {
        let nv = labels.len();
        // succ[v]: for each wedge (a, b) at v, b follows a counterclockwise.
        let mut succ: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); nv];
        let mut has_pred: Vec<BTreeMap<usize, ()>> = vec![BTreeMap::new(); nv];
        for f in faces {
            for k in 0..3 {
                let (v, a, b) = (f[k], f[(k + 1) % 3], f[(k + 2) % 3]);
                if v >= nv || a >= nv || b >= nv {
                    return Err(MapError::VertexOutOfRange(v.max(a).max(b)));
                }
                if succ[v].insert(a, b).is_some() {
                    return Err(MapError::BadRotation(v));
                }
                has_pred[v].insert(b, ());
            }
        }
        let mut edge_of: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut edges: Vec<[usize; 2]> = Vec::new();
        let mut half = |u: usize, v: usize, edges: &mut Vec<[usize; 2]>| -> usize {
            let key = (u.min(v), u.max(v));
            let e = *edge_of.entry(key).or_insert_with(|| {
                edges.push([key.0, key.1]);
                edges.len() - 1
            });
            if edges[e][0] == u {
                2 * e
            } else {
                2 * e + 1
            }
        };
        let mut rotation: Vec<Vec<usize>> = vec![Vec::new(); nv];
        let mut outer = None;
        for v in 0..nv {
            let starts: Vec<usize> = succ[v].keys().copied().filter(|a| !has_pred[v].contains_key(a)).collect();
            let start = match starts.len() {
                0 => match succ[v].keys().next() {
                    Some(&a) => a,
                    None => continue,
                },
                1 => starts[0],
                _ => return Err(MapError::BadRotation(v)),
            };
            let mut order = vec![start];
            let mut cur = start;
            while let Some(&b) = succ[v].get(&cur) {
                if b == start {
                    break;
                }
                if order.len() > succ[v].len() {
                    return Err(MapError::BadRotation(v));
                }
                order.push(b);
                cur = b;
            }
            let expected = if starts.is_empty() { succ[v].len() } else { succ[v].len() + 1 };
            if order.len() != expected {
                return Err(MapError::BadRotation(v));
            }
            for &w in &order {
                rotation[v].push(half(v, w, &mut edges));
            }
            if !starts.is_empty() && outer.is_none() {
                // v -> start has the outer face on its right; its twin has it on the left.
                outer = Some(half(start, v, &mut edges));
            }
        }
        Self::from_rotation(labels, &edges, None, &rotation, outer)
    }

    /// Finds the half-edge whose left face has exactly the given boundary walk.
    fn locate_walk(&self, walk: &[NeighborEntry], tags: &[Option<u32>]) -> Result<usize, MapError> {
        if walk.len() < 2 {
            return Err(MapError::BadOuterFace);
        }
        let step_ok =
            |h: usize, to: usize, tag: Option<u32>| self.dest(h) == to && (tag.is_none() || tags[h / 2] == tag);
        let start = walk[0].0;
        if start >= self.num_vertices() {
            return Err(MapError::BadOuterFace);
        }
        for h in self.out_half_edges(start) {
            if !step_ok(h, walk[1 % walk.len()].0, walk[1 % walk.len()].1) {
                continue;
            }
            let cycle = self.face_cycle(h);
            if cycle.len() != walk.len() {
                continue;
            }
            let ok = cycle.iter().enumerate().all(|(i, &g)| {
                let (to, tag) = walk[(i + 1) % walk.len()];
                self.origin[g] == walk[i].0 && step_ok(g, to, tag)
            });
            if ok {
                return Ok(h);
            }
        }
        Err(MapError::BadOuterFace)
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn num_edges(&self) -> usize {
        self.origin.len() / 2
    }

    pub fn num_half_edges(&self) -> usize {
        self.origin.len()
    }

    pub fn label(&self, v: usize) -> u32 {
        self.labels[v]
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    /// Index of the vertex with the given label.
    pub fn vertex_by_label(&self, label: u32) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    /// Label to index lookup table for repeated queries.
    pub fn label_index(&self) -> BTreeMap<u32, usize> {
        self.labels.iter().enumerate().map(|(i, &l)| (l, i)).collect()
    }

    pub fn edge_id(&self, e: usize) -> u32 {
        self.edge_ids[e]
    }

    pub fn edge_ids(&self) -> &[u32] {
        &self.edge_ids
    }

    #[inline]
    pub fn twin(h: usize) -> usize {
        h ^ 1
    }

    #[inline]
    pub fn origin(&self, h: usize) -> usize {
        self.origin[h]
    }

    #[inline]
    pub fn dest(&self, h: usize) -> usize {
        self.origin[h ^ 1]
    }

    /// Counterclockwise successor of `h` around its origin.
    #[inline]
    pub fn next_around(&self, h: usize) -> usize {
        self.next[h]
    }

    #[inline]
    pub fn prev_around(&self, h: usize) -> usize {
        self.prev[h]
    }

    /// Successor of `h` along the face on its left.
    #[inline]
    pub fn face_next(&self, h: usize) -> usize {
        self.prev[h ^ 1]
    }

    /// A half-edge whose left face is the outer face.
    pub fn outer(&self) -> Option<usize> {
        self.outer
    }

    pub fn first_out(&self, v: usize) -> Option<usize> {
        let h = self.first[v];
        (h != NONE).then_some(h)
    }

    /// Outgoing half-edges of `v` in counterclockwise order.
    pub fn out_half_edges(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let start = self.first[v];
        let mut cur = start;
        let mut done = start == NONE;
        core::iter::from_fn(move || {
            if done {
                return None;
            }
            let h = cur;
            cur = self.next[h];
            done = cur == start;
            Some(h)
        })
    }

    pub fn degree(&self, v: usize) -> usize {
        self.out_half_edges(v).count()
    }

    /// Neighbors of `v` in counterclockwise order (with repetition for
    /// parallel edges).
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.out_half_edges(v).map(move |h| self.dest(h))
    }

    /// Half-edges of the face to the left of `h`, starting at `h`.
    pub fn face_cycle(&self, h: usize) -> Vec<usize> {
        let mut out = vec![h];
        let mut g = self.face_next(h);
        while g != h {
            out.push(g);
            g = self.face_next(g);
        }
        out
    }

    /// Assigns a face index to every half-edge; returns (face_of, count).
    pub fn face_indices(&self) -> (Vec<usize>, usize) {
        let mut face_of = vec![NONE; self.num_half_edges()];
        let mut count = 0;
        for h in 0..self.num_half_edges() {
            if face_of[h] != NONE {
                continue;
            }
            let mut g = h;
            loop {
                face_of[g] = count;
                g = self.face_next(g);
                if g == h {
                    break;
                }
            }
            count += 1;
        }
        (face_of, count)
    }

    /// Vertex walk around the outer face (empty for an edgeless map).
    pub fn outer_walk(&self) -> Vec<usize> {
        match self.outer {
            Some(h) => self.face_cycle(h).into_iter().map(|g| self.origin[g]).collect(),
            None => Vec::new(),
        }
    }

    /// Per-edge pairing tag: `Some(k)` for edges that have a parallel twin,
    /// numbered in order of first appearance in a canonical scan, `None`
    /// otherwise. Loops are treated as parallel to nothing.
    pub fn pair_tags(&self) -> Vec<Option<u32>> {
        let mut mult: BTreeMap<(u32, u32), u32> = BTreeMap::new();
        for e in 0..self.num_edges() {
            *mult.entry(self.edge_key(e)).or_default() += 1;
        }
        let mut tags = vec![None; self.num_edges()];
        let mut counter = 0;
        for v in self.canonical_vertex_order() {
            for h in self.canonical_rotation(v) {
                let e = h / 2;
                if tags[e].is_none() && mult[&self.edge_key(e)] > 1 {
                    tags[e] = Some(counter);
                    counter += 1;
                }
            }
        }
        tags
    }

    fn edge_key(&self, e: usize) -> (u32, u32) {
        let a = self.labels[self.origin[2 * e]];
        let b = self.labels[self.origin[2 * e + 1]];
        (a.min(b), a.max(b))
    }

    /// Vertex indices sorted by label.
    pub fn canonical_vertex_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.num_vertices()).collect();
        order.sort_by_key(|&v| self.labels[v]);
        order
    }

    /// Outgoing half-edges of `v` counterclockwise, starting from the one
    /// whose (destination label, position in an arbitrary-start rotation)
    /// is smallest. With parallel edges the start is made unique by taking
    /// the rotation that is lexicographically smallest as a label sequence.
    pub fn canonical_rotation(&self, v: usize) -> Vec<usize> {
        let rot: Vec<usize> = self.out_half_edges(v).collect();
        if rot.is_empty() {
            return rot;
        }
        let seq: Vec<u32> = rot.iter().map(|&h| self.labels[self.dest(h)]).collect();
        let n = rot.len();
        let best =
            (0..n).min_by(|&a, &b| (0..n).map(|i| seq[(a + i) % n]).cmp((0..n).map(|i| seq[(b + i) % n]))).unwrap_or(0);
        (0..n).map(|i| rot[(best + i) % n]).collect()
    }

    /// Canonical description of the embedding: for each vertex (by label) the
    /// counterclockwise neighbor labels with pairing tags, plus the outer
    /// boundary walk. Two maps describe the same labeled embedding iff their
    /// signatures are equal (up to the tag numbering, which is canonical).
    pub fn signature(&self) -> MapSignature {
        let tags = self.pair_tags();
        let rotations = self
            .canonical_vertex_order()
            .into_iter()
            .map(|v| {
                let entries =
                    self.canonical_rotation(v).into_iter().map(|h| (self.labels[self.dest(h)], tags[h / 2])).collect();
                (self.labels[v], entries)
            })
            .collect();
        MapSignature { rotations, outer: self.canonical_outer_walk(&tags) }
    }

    /// Outer walk as (label, tag-of-arriving-edge) starting at the smallest
    /// (origin label, destination label, tag) half-edge of the outer face.
    pub fn canonical_outer_walk(&self, tags: &[Option<u32>]) -> Vec<(u32, Option<u32>)> {
        let Some(h0) = self.outer else { return Vec::new() };
        let cycle = self.face_cycle(h0);
        let key = |h: usize| (self.labels[self.origin[h]], self.labels[self.dest(h)], tags[h / 2]);
        let start = (0..cycle.len()).min_by_key(|&i| key(cycle[i])).unwrap_or(0);
        let n = cycle.len();
        (0..n)
            .map(|i| {
                let h = cycle[(start + i) % n];
                // Tag of the edge arriving at this vertex along the walk.
                let arriving = cycle[(start + i + n - 1) % n];
                (self.labels[self.origin[h]], tags[arriving / 2])
            })
            .collect()
    }

    /// The submap spanned by the kept edges (indexed by edge). Vertices are
    /// the endpoints of kept edges plus `extra` (used for single-vertex
    /// results). The outer face of the result is the face containing this
    /// map's outer face.
    pub fn submap(&self, keep: &[bool], extra: &[usize]) -> PlanarMap {
        self.submap_with_outer(keep, extra, None)
    }

    /// As [`PlanarMap::submap`], but when `outer_hint` names a kept half-edge
    /// the result's outer face is the face to its left.
    pub fn submap_with_outer(&self, keep: &[bool], extra: &[usize], outer_hint: Option<usize>) -> PlanarMap {
        let mut vmap = vec![NONE; self.num_vertices()];
        let mut labels = Vec::new();
        let add_vertex = |v: usize, vmap: &mut Vec<usize>, labels: &mut Vec<u32>| {
            if vmap[v] == NONE {
                vmap[v] = labels.len();
                labels.push(self.labels[v]);
            }
        };
        // Keep vertex order stable with respect to the host.
        let mut used = vec![false; self.num_vertices()];
        for e in 0..self.num_edges() {
            if keep[e] {
                used[self.origin[2 * e]] = true;
                used[self.origin[2 * e + 1]] = true;
            }
        }
        for &v in extra {
            used[v] = true;
        }
        for v in 0..self.num_vertices() {
            if used[v] {
                add_vertex(v, &mut vmap, &mut labels);
            }
        }
        let mut emap = vec![NONE; self.num_edges()];
        let mut edges = Vec::new();
        let mut ids = Vec::new();
        for e in 0..self.num_edges() {
            if keep[e] {
                emap[e] = edges.len();
                edges.push([vmap[self.origin[2 * e]], vmap[self.origin[2 * e + 1]]]);
                ids.push(self.edge_ids[e]);
            }
        }
        let hmap = |h: usize| 2 * emap[h / 2] + (h & 1);
        let mut rotation = vec![Vec::new(); labels.len()];
        for v in 0..self.num_vertices() {
            if vmap[v] == NONE {
                continue;
            }
            rotation[vmap[v]] = self.out_half_edges(v).filter(|&h| keep[h / 2]).map(hmap).collect();
        }
        let hinted = outer_hint.filter(|&h| keep[h / 2]).map(hmap);
        let outer = hinted.or_else(|| {
            self.outer.and_then(|ho| {
                let (face_of, nf) = self.face_indices();
                let mut uf = UnionFind::new(nf);
                for e in 0..self.num_edges() {
                    if !keep[e] {
                        uf.union(face_of[2 * e], face_of[2 * e + 1]);
                    }
                }
                let target = uf.find(face_of[ho]);
                (0..self.num_half_edges()).find(|&h| keep[h / 2] && uf.find(face_of[h]) == target).map(hmap)
            })
        });
        PlanarMap::from_rotation(labels, &edges, Some(ids), &rotation, outer)
            .expect("submap of a valid rotation system is valid")
    }

    /// Copy of the map with every label `l` replaced by `f(l)`.
    pub fn relabeled(&self, f: impl Fn(u32) -> u32) -> PlanarMap {
        let mut out = self.clone();
        for l in &mut out.labels {
            *l = f(*l);
        }
        out
    }

    /// Number of connected components.
    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.num_vertices());
        for e in 0..self.num_edges() {
            uf.union(self.origin[2 * e], self.origin[2 * e + 1]);
        }
        (0..self.num_vertices()).filter(|&v| uf.find(v) == v).count()
    }
}

impl PartialEq for PlanarMap {
    fn eq(&self, other: &Self) -> bool {
        self.signature() == other.signature()
    }
}

/// See [`PlanarMap::signature`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapSignature {
    pub rotations: Vec<(u32, Vec<(u32, Option<u32>)>)>,
    pub outer: Vec<(u32, Option<u32>)>,
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            core::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// Builds a simple map from index neighbor lists and an outer walk.
    pub fn simple(lists: &[&[usize]], outer: &[usize]) -> PlanarMap {
        let labels = (0..lists.len() as u32).collect();
        let lists: Vec<Vec<NeighborEntry>> = lists.iter().map(|l| l.iter().map(|&v| (v, None)).collect()).collect();
        let walk: Vec<NeighborEntry> = outer.iter().map(|&v| (v, None)).collect();
        PlanarMap::from_neighbor_lists(labels, &lists, &walk).unwrap()
    }

    /// K4 with outer triangle 1,2,3 (drawn counterclockwise) and interior 0.
    pub fn k4() -> PlanarMap {
        // Interior vertex 0 sees 1,2,3 counterclockwise. The outer face,
        // walked with the face on the left, runs clockwise: 1,3,2.
        simple(&[&[1, 2, 3], &[2, 0, 3], &[3, 0, 1], &[1, 0, 2]], &[1, 3, 2])
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn k4_faces() {
        let m = k4();
        let (_, nf) = m.face_indices();
        assert_eq!(m.num_vertices(), 4);
        assert_eq!(m.num_edges(), 6);
        assert_eq!(nf, 4);
        assert_eq!(m.outer_walk().len(), 3);
        for h in 0..m.num_half_edges() {
            assert_eq!(m.face_cycle(h).len(), 3);
        }
    }

    #[test]
    fn asymmetric_lists_rejected() {
        let labels = vec![0, 1, 2];
        let lists = vec![vec![(1, None)], vec![(0, None), (2, None)], vec![]];
        let err = PlanarMap::from_neighbor_lists(labels, &lists, &[(0, None), (1, None)]);
        assert!(err.is_err());
    }

    #[test]
    fn bad_rotation_rejected() {
        // Half-edge 1 (origin 1) listed at vertex 0.
        let err = PlanarMap::from_rotation(vec![0, 1], &[[0, 1]], None, &[vec![0, 1], vec![]], None);
        assert!(matches!(err, Err(MapError::BadRotation(_))));
    }

    #[test]
    fn signature_ignores_internal_numbering() {
        let a = k4();
        let b = simple(&[&[2, 3, 1], &[0, 3, 2], &[0, 1, 3], &[0, 2, 1]], &[2, 1, 3]);
        assert_eq!(a, b);
        let c = simple(&[&[1, 3, 2], &[3, 0, 2], &[0, 3, 1], &[0, 1, 2]], &[1, 2, 3]);
        assert_ne!(a, c);
    }

    #[test]
    fn submap_keeps_outer_face() {
        let m = k4();
        // Drop the three spokes: the outer triangle remains, outer face same side.
        let keep: Vec<bool> = (0..m.num_edges()).map(|e| m.origin(2 * e) != 0 && m.dest(2 * e) != 0).collect();
        let s = m.submap(&keep, &[]);
        assert_eq!(s.num_vertices(), 3);
        let w: Vec<u32> = s.outer_walk().iter().map(|&v| s.label(v)).collect();
        let host: Vec<u32> = m.outer_walk().iter().map(|&v| m.label(v)).collect();
        let rot = |x: &Vec<u32>| {
            let i = x.iter().position(|&l| l == 1).unwrap();
            (0..x.len()).map(|k| x[(i + k) % x.len()]).collect::<Vec<_>>()
        };
        assert_eq!(rot(&w), rot(&host));
    }
}
