//! Independent reference implementations used by the integration tests.
//!
//! Nothing here calls into the solver, oracle or adjacency code under test:
//! path families are enumerated exhaustively, the restricted program is
//! solved by Hildreth's dual coordinate ascent, enclosure is decided by a
//! flood fill over faces, and CRT edges come from direct scans of the grid.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use cpvel_core::crt::CorrelatedTrace;
use cpvel_core::generate::{hex_disk, random_flips, random_insertion, stacked_wheel, triangle_mesh, wheel};
use cpvel_core::rng::rng_from_seed;
use cpvel_core::{RootedTriangulation, Triangulation};

/// Does the simple cycle `cycle` (consecutive entries adjacent, closing back
/// to the start) separate `root` from the outer face?
pub fn encloses(tri: &Triangulation, cycle: &[usize], root: usize) -> bool {
    let k = cycle.len();
    let cut: BTreeSet<(usize, usize)> =
        (0..k).map(|i| (cycle[i], cycle[(i + 1) % k])).flat_map(|(a, b)| [(a, b), (b, a)]).collect();
    let faces = tri.faces();
    let mut by_edge: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (f, t) in faces.iter().enumerate() {
        for i in 0..3 {
            let (a, b) = (t[i], t[(i + 1) % 3]);
            by_edge.entry((a.min(b), a.max(b))).or_default().push(f);
        }
    }
    let mut seen = vec![false; faces.len()];
    let mut queue = VecDeque::new();
    // Faces adjacent to the outer face through uncut boundary edges.
    for (&(a, b), fs) in &by_edge {
        if fs.len() == 1 && !cut.contains(&(a, b)) && !seen[fs[0]] {
            seen[fs[0]] = true;
            queue.push_back(fs[0]);
        }
    }
    while let Some(f) = queue.pop_front() {
        let t = faces[f];
        for i in 0..3 {
            let (a, b) = (t[i], t[(i + 1) % 3]);
            if cut.contains(&(a, b)) {
                continue;
            }
            for &g in &by_edge[&(a.min(b), a.max(b))] {
                if !seen[g] {
                    seen[g] = true;
                    queue.push_back(g);
                }
            }
        }
    }
    let root_face = faces.iter().position(|t| t.contains(&root)).expect("root lies on a face");
    !seen[root_face]
}

/// All simple cycles of `tri` avoiding `root`, each once, as vertex lists
/// starting at their smallest vertex.
pub fn simple_cycles(tri: &Triangulation, root: usize) -> Vec<Vec<usize>> {
    let n = tri.num_vertices();
    let mut out = Vec::new();
    let mut path = Vec::new();
    let mut on_path = vec![false; n];
    fn dfs(
        tri: &Triangulation,
        root: usize,
        start: usize,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        let last = *path.last().unwrap();
        for &w in tri.neighbors(last) {
            if w == root || w < start {
                continue;
            }
            if w == start && path.len() >= 3 && path[1] < last {
                // Each cycle is found twice (both orientations); keep one.
                out.push(path.clone());
            } else if !on_path[w] && w != start {
                on_path[w] = true;
                path.push(w);
                dfs(tri, root, start, path, on_path, out);
                path.pop();
                on_path[w] = false;
            }
        }
    }
    for s in 0..n {
        if s == root {
            continue;
        }
        path.clear();
        path.push(s);
        on_path[s] = true;
        dfs(tri, root, s, &mut path, &mut on_path, &mut out);
        on_path[s] = false;
    }
    out
}

/// Simple paths from `v` that stop at the first vertex of `targets`,
/// avoiding `forbidden`. When `v` itself is a target the only path is `[v]`.
pub fn paths_to(tri: &Triangulation, v: usize, targets: &[bool], forbidden: &[bool]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if targets[v] {
        out.push(vec![v]);
        return out;
    }
    let mut path = vec![v];
    let mut on_path = vec![false; tri.num_vertices()];
    on_path[v] = true;
    fn dfs(
        tri: &Triangulation,
        targets: &[bool],
        forbidden: &[bool],
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        let last = *path.last().unwrap();
        for &w in tri.neighbors(last) {
            if on_path[w] || forbidden[w] {
                continue;
            }
            path.push(w);
            if targets[w] {
                out.push(path.clone());
            } else {
                on_path[w] = true;
                dfs(tri, targets, forbidden, path, on_path, out);
                on_path[w] = false;
            }
            path.pop();
        }
    }
    dfs(tri, targets, forbidden, &mut path, &mut on_path, &mut out);
    out
}

/// Vertex sets of all minimal members of the boundary family of `v`.
pub fn boundary_sets(tri: &Triangulation, v: usize) -> Vec<Vec<usize>> {
    let n = tri.num_vertices();
    let targets: Vec<bool> = (0..n).map(|u| tri.is_outer(u)).collect();
    paths_to(tri, v, &targets, &vec![false; n])
}

/// Vertex sets covering every closed walk through `v` that avoids `root`
/// and winds once around it: an enclosing simple cycle plus a simple tail
/// from `v` to the cycle.
pub fn winding_sets(tri: &Triangulation, root: usize, v: usize) -> Vec<Vec<usize>> {
    let n = tri.num_vertices();
    let mut out = Vec::new();
    for cycle in simple_cycles(tri, root) {
        if !encloses(tri, &cycle, root) {
            continue;
        }
        if cycle.contains(&v) {
            out.push(cycle);
            continue;
        }
        let mut targets = vec![false; n];
        for &u in &cycle {
            targets[u] = true;
        }
        let mut forbidden = vec![false; n];
        forbidden[root] = true;
        for tail in paths_to(tri, v, &targets, &forbidden) {
            let mut set = cycle.clone();
            set.extend(&tail[..tail.len() - 1]);
            out.push(set);
        }
    }
    out
}

/// Sorted, deduplicated vertex sets with every strict superset of another
/// member removed.
pub fn minimal_sets(sets: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let mut sets: Vec<BTreeSet<usize>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
    sets.sort_by_key(|s| s.len());
    sets.dedup();
    let mut kept: Vec<BTreeSet<usize>> = Vec::new();
    for s in sets {
        if !kept.iter().any(|k| k.is_subset(&s)) {
            kept.push(s);
        }
    }
    kept.into_iter().map(|s| s.into_iter().collect()).collect()
}

/// Certified bounds from Hildreth's method on `min |m|^2 / 2` subject to
/// `sum_{u in S} m_u >= 1` for every set `S`.
#[derive(Debug, Clone)]
pub struct QpBounds {
    pub lower: f64,
    pub upper: f64,
    pub metric: Vec<f64>,
}

/// Vertex extremal length of the family whose minimal vertex sets are `sets`
/// over `n` vertices. Stops when the relative gap is below `tol`.
pub fn vel_of_sets(n: usize, sets: &[Vec<usize>], tol: f64) -> QpBounds {
    assert!(!sets.is_empty(), "empty family");
    let mut lambda = vec![0.0; sets.len()];
    let mut m = vec![0.0; n];
    let mut best = QpBounds { lower: 0.0, upper: f64::INFINITY, metric: m.clone() };
    for sweep in 0..2_000_000 {
        for (i, s) in sets.iter().enumerate() {
            let dot: f64 = s.iter().map(|&u| m[u]).sum();
            let step = ((1.0 - dot) / s.len() as f64).max(-lambda[i]);
            if step != 0.0 {
                lambda[i] += step;
                for &u in s {
                    m[u] += step;
                }
            }
        }
        if sweep % 16 != 0 {
            continue;
        }
        let area: f64 = m.iter().map(|x| x * x).sum();
        let shortest = sets.iter().map(|s| s.iter().map(|&u| m[u]).sum::<f64>()).fold(f64::INFINITY, f64::min);
        if area > 0.0 && shortest > 0.0 {
            let lower = shortest * shortest / area;
            if lower > best.lower {
                best.lower = lower;
                best.metric = m.clone();
            }
        }
        let dual = 2.0 * lambda.iter().sum::<f64>() - area;
        if dual > 0.0 {
            best.upper = best.upper.min(1.0 / dual);
        }
        if best.upper - best.lower <= tol * best.lower.max(1.0) {
            return best;
        }
    }
    panic!("Hildreth did not converge: {best:?}");
}

/// Edges `(a, b, upper)` of the CRT window with first vertex index `lo` and
/// `n` vertices, straight from the grid: vertex `i` owns grid offsets
/// `((i - 1) k, i k]` from time zero, and `a + 1 < b` are joined when the
/// larger of their block minima is at most the minimum over the grid strictly
/// after `a`'s block and up to the end of `b - 1`'s block.
pub fn brute_crt_edges(trace: &CorrelatedTrace, lo: i64, n: usize) -> Vec<(usize, usize, bool)> {
    let k = trace.oversample() as i64;
    let zero = trace.zero_index() as i64;
    let mut out = Vec::new();
    for (upper, values) in [(false, trace.l()), (true, trace.r())] {
        let block_min = |i: i64| -> f64 {
            let first = (zero + (i - 1) * k + 1) as usize;
            let last = (zero + i * k) as usize;
            values[first..=last].iter().copied().fold(f64::INFINITY, f64::min)
        };
        for a in 0..n {
            let ia = lo + a as i64;
            let ma = block_min(ia);
            let mut between = f64::INFINITY;
            for b in a + 1..n {
                let ib = lo + b as i64;
                if b >= a + 2 {
                    // Extend the running minimum by block ib - 1.
                    let first = (zero + (ib - 2) * k + 1) as usize;
                    let last = (zero + (ib - 1) * k) as usize;
                    between = values[first..=last].iter().copied().fold(between, f64::min);
                    if ma.max(block_min(ib)) <= between {
                        out.push((a, b, upper));
                    }
                }
            }
        }
    }
    out.sort_unstable_by_key(|&(a, b, u)| (u, a, b));
    out
}

/// Fixed suite of rooted triangulations with at most ten vertices.
pub fn small_suite() -> Vec<(String, RootedTriangulation)> {
    let mut maps: Vec<(String, RootedTriangulation)> = (3..=9).map(|k| (format!("wheel-{k}"), wheel(k))).collect();
    maps.push(("stacked-3x2".into(), stacked_wheel(3, 2)));
    maps.push(("stacked-3x3".into(), stacked_wheel(3, 3)));
    maps.push(("mesh-3".into(), triangle_mesh(3)));
    maps.push(("hex-1".into(), hex_disk(1)));
    for seed in 0..6 {
        let mut rng = rng_from_seed(seed);
        let n = 2 + (seed as usize % 6);
        let base = random_insertion(n, &mut rng);
        maps.push((format!("random-{n}-s{seed}"), random_flips(&base, 2 * n, &mut rng)));
    }
    maps.retain(|(_, t)| t.num_vertices() <= 10);
    maps
}
