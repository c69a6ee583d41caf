//! Separation oracles: shortest members of the path families under a metric.
//!
//! Winding is measured combinatorially. A dual path from a face at the root
//! to the outer face plays the role of a cut; a walk avoiding the root changes
//! sheet by +1 or -1 each time it crosses the cut, and its winding number is
//! the net sheet change.

use alloc::collections::{BinaryHeap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::{PathFamily, VelError, VertexMetric};
use crate::planar::Triangulation;

const UNSET: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleOptions {
    /// Cover sheets searched: `[-sheets, sheets + 1]`.
    pub sheets: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self { sheets: 3 }
    }
}

#[derive(Clone, Copy, PartialEq)]
struct Entry(f64, usize);

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then_with(|| other.1.cmp(&self.1))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Node-weighted Dijkstra from `src` skipping `avoid`. Distances include the
/// weights of both endpoints. Vertices in `sinks` are settled but not expanded.
pub(crate) fn dijkstra(
    tri: &Triangulation,
    m: &[f64],
    src: usize,
    avoid: Option<usize>,
    sinks: Option<&[bool]>,
) -> (Vec<f64>, Vec<usize>) {
    let n = tri.num_vertices();
    let mut dist = vec![f64::INFINITY; n];
    let mut pred = vec![UNSET; n];
    let mut heap = BinaryHeap::new();
    dist[src] = m[src];
    heap.push(Entry(m[src], src));
    while let Some(Entry(d, u)) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        if u != src && sinks.is_some_and(|s| s[u]) {
            continue;
        }
        for &w in tri.neighbors(u) {
            if Some(w) == avoid {
                continue;
            }
            let nd = d + m[w];
            if nd < dist[w] {
                dist[w] = nd;
                pred[w] = u;
                heap.push(Entry(nd, w));
            }
        }
    }
    (dist, pred)
}

fn trace(pred: &[usize], to: usize) -> Vec<usize> {
    let mut path = vec![to];
    let mut cur = to;
    while pred[cur] != UNSET {
        cur = pred[cur];
        path.push(cur);
    }
    path.reverse();
    path
}

/// Shortest paths from `v` to the outer face, one per reachable outer
/// endpoint, sorted by length. Paths stop at the first outer vertex.
pub(crate) fn boundary_paths(tri: &Triangulation, m: &[f64], v: usize) -> Vec<(f64, Vec<usize>)> {
    if tri.is_outer(v) {
        return vec![(m[v], vec![v])];
    }
    let sinks: Vec<bool> = (0..tri.num_vertices()).map(|u| tri.is_outer(u)).collect();
    let (dist, pred) = dijkstra(tri, m, v, None, Some(&sinks));
    let mut out: Vec<(f64, Vec<usize>)> =
        tri.outer_cycle().iter().filter(|&&b| dist[b].is_finite()).map(|&b| (dist[b], trace(&pred, b))).collect();
    out.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    out
}

/// Hop-shortest path from a neighbor of `root` to the outer face, avoiding `root`.
fn spoke(tri: &Triangulation, root: usize) -> Vec<usize> {
    let n = tri.num_vertices();
    let mut next = vec![UNSET; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for &b in tri.outer_cycle() {
        seen[b] = true;
        queue.push_back(b);
    }
    while let Some(u) = queue.pop_front() {
        if tri.neighbors(u).contains(&root) {
            let mut path = vec![u];
            let mut cur = u;
            while next[cur] != UNSET {
                cur = next[cur];
                path.push(cur);
            }
            return path;
        }
        for &w in tri.neighbors(u) {
            if w != root && !seen[w] {
                seen[w] = true;
                next[w] = u;
                queue.push_back(w);
            }
        }
    }
    Vec::new()
}

/// The cut used for winding numbers around `root`, and searches on the
/// induced cyclic cover of the map minus the root.
#[derive(Debug, Clone)]
pub struct CutCover<'a> {
    tri: &'a Triangulation,
    root: usize,
    /// `adj[u]`: neighbors `w` of `u` (other than the root) with the sheet
    /// change of the step `u -> w`.
    adj: Vec<Vec<(usize, i8)>>,
    /// Steps `a -> b` crossing the cut positively.
    plus: Vec<(usize, usize)>,
    /// Vertex path from a neighbor of the root to the outer face; every
    /// winding walk visits it.
    spoke: Vec<usize>,
}

struct Search {
    dist: Vec<f64>,
    pred: Vec<usize>,
}

impl<'a> CutCover<'a> {
    pub fn new(tri: &'a Triangulation, root: usize) -> Self {
        let map = tri.map();
        let (face_of, nf) = map.face_indices();
        let outer_face = face_of[map.outer().expect("triangulation has an outer face")];
        // Dual BFS from the faces around the root to the outer face.
        let mut by_face: Vec<Vec<usize>> = vec![Vec::new(); nf];
        for (h, &f) in face_of.iter().enumerate() {
            by_face[f].push(h);
        }
        let mut via = vec![UNSET; nf];
        let mut seen = vec![false; nf];
        let mut queue = VecDeque::new();
        for h in map.out_half_edges(root) {
            let f = face_of[h];
            if !seen[f] {
                seen[f] = true;
                queue.push_back(f);
            }
        }
        while let Some(f) = queue.pop_front() {
            if f == outer_face {
                break;
            }
            for &h in &by_face[f] {
                let g = face_of[h ^ 1];
                if !seen[g] {
                    seen[g] = true;
                    via[g] = h;
                    queue.push_back(g);
                }
            }
        }
        let mut sign = vec![0i8; map.num_half_edges()];
        let mut f = outer_face;
        while via[f] != UNSET {
            let h = via[f];
            // h has the root side on its left.
            sign[h] = 1;
            sign[h ^ 1] = -1;
            f = face_of[h];
        }
        let n = tri.num_vertices();
        let mut adj = vec![Vec::new(); n];
        let mut plus = Vec::new();
        for u in 0..n {
            if u == root {
                continue;
            }
            for h in map.out_half_edges(u) {
                let w = map.dest(h);
                if w == root {
                    continue;
                }
                adj[u].push((w, sign[h]));
                if sign[h] == 1 {
                    plus.push((u, w));
                }
            }
        }
        let spoke = spoke(tri, root);
        Self { tri, root, adj, plus, spoke }
    }

    pub fn root(&self) -> usize {
        self.root
    }

    /// Number of edges crossed by the cut.
    pub fn cut_len(&self) -> usize {
        self.plus.len()
    }

    /// Net signed cut crossings of a closed walk given with its start repeated
    /// at the end. `None` if the walk uses a non-edge or the root.
    pub fn winding(&self, walk: &[usize]) -> Option<i64> {
        let mut total = 0i64;
        for pair in walk.windows(2) {
            let (u, w) = (pair[0], pair[1]);
            let &(_, s) = self.adj.get(u)?.iter().find(|&&(x, _)| x == w)?;
            total += s as i64;
        }
        Some(total)
    }

    fn search(
        &self,
        m: &[f64],
        start: (usize, i64),
        sheets: usize,
        target: Option<(usize, i64)>,
        cutoff: f64,
    ) -> Search {
        let n = self.tri.num_vertices();
        let lo = -(sheets as i64);
        let hi = sheets as i64 + 1;
        let layers = (hi - lo + 1) as usize;
        let idx = |v: usize, s: i64| ((s - lo) as usize) * n + v;
        let mut dist = vec![f64::INFINITY; layers * n];
        let mut pred = vec![UNSET; layers * n];
        let mut heap = BinaryHeap::new();
        let st = idx(start.0, start.1);
        dist[st] = m[start.0];
        heap.push(Entry(m[start.0], st));
        let goal = target.map(|(v, s)| idx(v, s));
        while let Some(Entry(d, state)) = heap.pop() {
            if d > dist[state] {
                continue;
            }
            if Some(state) == goal || d > cutoff {
                break;
            }
            let (u, s) = (state % n, (state / n) as i64 + lo);
            for &(w, ds) in &self.adj[u] {
                let t = s + ds as i64;
                if t < lo || t > hi {
                    continue;
                }
                let next = idx(w, t);
                let nd = d + m[w];
                if nd < dist[next] {
                    dist[next] = nd;
                    pred[next] = state;
                    heap.push(Entry(nd, next));
                }
            }
        }
        Search { dist, pred }
    }

    fn project(&self, pred: &[usize], to: usize) -> Vec<usize> {
        let n = self.tri.num_vertices();
        let mut out = vec![to % n];
        let mut cur = to;
        while pred[cur] != UNSET {
            cur = pred[cur];
            out.push(cur % n);
        }
        out.reverse();
        out
    }

    /// Shortest cover walk from `(v, 0)` to `(v, 1)`: a closed walk through
    /// `v` with winding number one, shortest when vertices are counted with
    /// multiplicity.
    pub fn cover_loop(&self, m: &[f64], v: usize, sheets: usize) -> Option<Vec<usize>> {
        let n = self.tri.num_vertices();
        let s = self.search(m, (v, 0), sheets, Some((v, 1)), f64::INFINITY);
        let goal = (1 + sheets) * n + v;
        s.dist[goal].is_finite().then(|| self.project(&s.pred, goal))
    }

    /// Shortest member of the winding family through `v` under set
    /// semantics (exact whenever the optimal cycle lifts within the sheets).
    pub fn shortest_winding(&self, m: &[f64], v: usize, sheets: usize) -> Option<Vec<usize>> {
        self.winding_candidates(m, v, sheets).into_iter().next().map(|(_, w)| w)
    }

    /// Winding walks through `v`, one per spoke vertex, sorted by set length.
    /// The first is a shortest member of the family.
    ///
    /// The optimum is a lollipop: a shortest path from `v` to a junction `x`
    /// followed by a simple winding cycle through `x`. Such a cycle meets the
    /// spoke at some `p`, and by deck symmetry one cover search from `(p, 0)`
    /// prices the cycles through `p` and every junction at once.
    pub fn winding_candidates(&self, m: &[f64], v: usize, sheets: usize) -> Vec<(f64, Vec<usize>)> {
        let n = self.tri.num_vertices();
        let lo = -(sheets as i64);
        let hi = sheets as i64 + 1;
        let idx = |x: usize, s: i64| ((s - lo) as usize) * n + x;
        let (stem, stem_pred) = dijkstra(self.tri, m, v, Some(self.root), None);

        let mut best = f64::INFINITY;
        let mut picks = Vec::new();
        for &p in &self.spoke {
            let sr = self.search(m, (p, 0), sheets, None, best + m[p]);
            let mut pick: Option<(f64, usize, i64)> = None;
            for x in 0..n {
                if x == self.root || !(stem[x] < best) {
                    continue;
                }
                for s in lo + 1..=hi {
                    let c = sr.dist[idx(x, s)] + sr.dist[idx(x, s - 1)] - m[x] - m[p];
                    let total = stem[x] + c - m[x];
                    if total < pick.map_or(f64::INFINITY, |q| q.0) {
                        pick = Some((total, x, s));
                    }
                }
            }
            if let Some((total, x, s)) = pick {
                best = best.min(total);
                let mut lp = self.project(&sr.pred, idx(x, s));
                lp.reverse();
                lp.extend(self.project(&sr.pred, idx(x, s - 1)).into_iter().skip(1));
                let stem_path = trace(&stem_pred, x);
                let mut walk = stem_path.clone();
                walk.extend_from_slice(&lp[1..]);
                walk.extend(stem_path.iter().rev().skip(1));
                let mut vs = walk.clone();
                vs.sort_unstable();
                vs.dedup();
                picks.push((vs.iter().map(|&u| m[u]).sum::<f64>(), walk));
            }
        }
        picks.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        picks
    }
}

/// Shortest member of `fam` under `m` (set semantics).
pub fn shortest_constraint(
    tri: &Triangulation,
    m: &VertexMetric,
    fam: PathFamily,
    opts: &OracleOptions,
) -> Result<Vec<usize>, VelError> {
    let n = tri.num_vertices();
    if m.len() != n {
        return Err(VelError::MissingVertex(m.len().min(n)));
    }
    match fam {
        PathFamily::Boundary(v) => {
            if v >= n {
                return Err(VelError::OutOfRange(v));
            }
            boundary_paths(tri, &m.m, v)
                .into_iter()
                .next()
                .map(|(_, p)| p)
                .ok_or(VelError::Oracle("outer face unreachable"))
        }
        PathFamily::Winding { root, v } => {
            if v >= n || root >= n {
                return Err(VelError::OutOfRange(v.max(root)));
            }
            if v == root {
                return Err(VelError::EmptyFamily);
            }
            let cover = CutCover::new(tri, root);
            cover.shortest_winding(&m.m, v, opts.sheets).ok_or(VelError::Oracle("no winding walk within sheet bound"))
        }
    }
}

pub(crate) fn shortest_with_sheets(
    tri: &Triangulation,
    m: &VertexMetric,
    fam: PathFamily,
    sheets: usize,
) -> Result<Vec<usize>, VelError> {
    shortest_constraint(tri, m, fam, &OracleOptions { sheets })
}
