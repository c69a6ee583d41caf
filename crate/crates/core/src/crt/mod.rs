//! Mated-CRT maps: correlated Brownian traces, the interval-minimum adjacency
//! rule, and rooted window triangulations.
//!
//! Vertex `i` (time `i * epsilon`) owns the grid block `((i - 1) k, i k]`,
//! `k` the oversampling factor, so the blocks partition the grid. Two
//! vertices `a + 1 < b` are joined below the spine when every block minimum
//! of `L` strictly between them exceeds both of theirs, and above the spine
//! by the same rule for `R`.

mod trace;

use alloc::vec;
use alloc::vec::Vec;

pub use trace::{correlation, CorrelatedTrace, Sampler, TraceParams, DEFAULT_MAX_VERTICES};

use crate::planar::{
    block_containing, collapse_parallel, fill_enclosed, MapError, PlanarMap, RootedTriangulation, Rule,
    ValidationReport,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CrtError {
    #[error("bad parameter: {0}")]
    BadParameter(&'static str),
    #[error("size cap exceeded: {requested} vertices requested, cap {cap}")]
    SizeCap { requested: f64, cap: usize },
    #[error("degenerate trace")]
    DegenerateTrace,
    #[error("non-planar nesting")]
    NonPlanar,
    #[error("window outside the trace or shorter than three vertices")]
    WindowOutOfRange,
    #[error("window too small")]
    WindowTooSmall,
    #[error("map error: {0}")]
    Map(#[from] MapError),
    #[error("invalid triangulation: {0}")]
    Invalid(ValidationReport),
}

/// Which rule produced an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeSide {
    /// From `L`, drawn below the spine.
    Lower,
    /// From `R`, drawn above the spine.
    Upper,
    /// Between consecutive vertices.
    Spine,
}

/// Pairs `(a, b)` with `a + 1 < b` such that every value strictly between
/// exceeds both `values[a]` and `values[b]`, in order of `b`, then of
/// decreasing `a`. Equal values anywhere on the stack are reported as a
/// degenerate trace.
pub fn visible_pairs(values: &[f64]) -> Result<Vec<(usize, usize)>, CrtError> {
    let mut stack: Vec<usize> = Vec::new();
    let mut pairs = Vec::new();
    for (i, &x) in values.iter().enumerate() {
        while let Some(&j) = stack.last() {
            if values[j] == x {
                return Err(CrtError::DegenerateTrace);
            }
            if j + 1 < i {
                pairs.push((j, i));
            }
            if values[j] > x {
                stack.pop();
            } else {
                break;
            }
        }
        stack.push(i);
    }
    Ok(pairs)
}

/// A window of the mated-CRT map with its planar embedding: vertices in time
/// order along a horizontal spine, `L` edges below and `R` edges above.
#[derive(Debug, Clone)]
pub struct MatedCrtMap {
    map: PlanarMap,
    /// Vertex index of the first vertex; vertex `v` sits at time
    /// `(first + v) * epsilon`.
    first: i64,
    epsilon: f64,
    sides: Vec<EdgeSide>,
}

impl MatedCrtMap {
    /// Builds the window of vertices with times in `[a, b]`.
    pub fn build(trace: &CorrelatedTrace, window: (f64, f64)) -> Result<Self, CrtError> {
        let eps = trace.epsilon();
        let (vlo, vhi) = trace.vertex_range();
        let lo = libm::ceil(window.0 / eps - 1e-9) as i64;
        let hi = libm::floor(window.1 / eps + 1e-9) as i64;
        if !(window.0 <= window.1) || lo < vlo || hi > vhi || hi - lo < 2 {
            return Err(CrtError::WindowOutOfRange);
        }
        let n = (hi - lo + 1) as usize;
        let minima = |upper: bool| -> Vec<f64> {
            (lo..=hi)
                .map(|i| {
                    let (a, b) = trace.block(i);
                    trace.min(upper, a, b)
                })
                .collect()
        };
        let lower = visible_pairs(&minima(false))?;
        let upper = visible_pairs(&minima(true))?;
        Self::from_pairs(lo, eps, n, &lower, &upper)
    }

    /// Assembles the embedding from explicit lower and upper pairs.
    pub fn from_pairs(
        first: i64,
        epsilon: f64,
        n: usize,
        lower: &[(usize, usize)],
        upper: &[(usize, usize)],
    ) -> Result<Self, CrtError> {
        let mut edges: Vec<[usize; 2]> = Vec::with_capacity(n - 1 + lower.len() + upper.len());
        let mut sides = Vec::with_capacity(edges.capacity());
        for v in 0..n - 1 {
            edges.push([v, v + 1]);
            sides.push(EdgeSide::Spine);
        }
        for (list, side) in [(lower, EdgeSide::Lower), (upper, EdgeSide::Upper)] {
            for &(a, b) in list {
                if !(a + 1 < b && b < n) {
                    return Err(CrtError::BadParameter("pair out of range"));
                }
                edges.push([a, b]);
                sides.push(side);
            }
        }

        // Per vertex: (side, neighbor, half-edge).
        let mut around: Vec<Vec<(EdgeSide, usize, usize)>> = vec![Vec::new(); n];
        for (e, &[a, b]) in edges.iter().enumerate() {
            around[a].push((sides[e], b, 2 * e));
            around[b].push((sides[e], a, 2 * e + 1));
        }
        let mut rotation = Vec::with_capacity(n);
        let mut outer = None;
        for (v, list) in around.iter().enumerate() {
            // Counterclockwise from the east: right spine, upper arcs (right
            // ones near to far, then left ones far to near), left spine, lower
            // arcs (left ones near to far, then right ones far to near).
            let key = |&(side, w, _): &(EdgeSide, usize, usize)| -> (u8, i64) {
                let w = w as i64;
                let v = v as i64;
                match side {
                    EdgeSide::Spine if w > v => (0, 0),
                    EdgeSide::Upper if w > v => (1, w),
                    EdgeSide::Upper => (2, w),
                    EdgeSide::Spine => (3, 0),
                    EdgeSide::Lower if w < v => (4, -w),
                    EdgeSide::Lower => (5, -w),
                }
            };
            let mut sorted = list.clone();
            sorted.sort_by_key(key);
            if v == 0 {
                // The outer face lies west of the first vertex, between its
                // farthest upper and farthest lower arcs.
                outer = sorted.iter().rev().find(|x| key(x).0 <= 1).map(|x| x.2);
            }
            rotation.push(sorted.into_iter().map(|x| x.2).collect::<Vec<usize>>());
        }
        let labels: Vec<u32> = (0..n as u32).collect();
        let map = PlanarMap::from_rotation(labels, &edges, None, &rotation, outer)?;
        let (_, faces) = map.face_indices();
        if n as i64 - edges.len() as i64 + faces as i64 != 2 {
            return Err(CrtError::NonPlanar);
        }
        let mut pairs: Vec<(usize, usize)> = edges.iter().map(|&[a, b]| (a, b)).collect();
        pairs.sort_unstable();
        if pairs.windows(3).any(|w| w[0] == w[2]) {
            return Err(CrtError::NonPlanar);
        }
        Ok(Self { map, first, epsilon, sides })
    }

    pub fn map(&self) -> &PlanarMap {
        &self.map
    }

    pub fn num_vertices(&self) -> usize {
        self.map.num_vertices()
    }

    /// Integer time index `i` of vertex `v` (time `i * epsilon`).
    pub fn time_index(&self, v: usize) -> i64 {
        self.first + v as i64
    }

    pub fn time(&self, v: usize) -> f64 {
        self.time_index(v) as f64 * self.epsilon
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Side of edge `e` (edge ids follow construction order: spine, lower, upper).
    pub fn side(&self, e: usize) -> EdgeSide {
        self.sides[e]
    }

    /// Vertex at time zero, if inside the window.
    pub fn origin_vertex(&self) -> Option<usize> {
        (-self.first >= 0 && -self.first < self.num_vertices() as i64).then(|| (-self.first) as usize)
    }

    /// Rooted triangulation with boundary: the block containing the vertices
    /// in the central `inner_fraction` of the window (and the time-zero
    /// vertex), with enclosed vertices restored and parallel edges collapsed.
    /// The root is the time-zero vertex. Labels are window vertex indices.
    pub fn window_triangulation(&self, inner_fraction: f64) -> Result<RootedTriangulation, CrtError> {
        if !(inner_fraction > 0.0 && inner_fraction < 1.0) {
            return Err(CrtError::BadParameter("inner fraction must lie in (0, 1)"));
        }
        let root = self.origin_vertex().ok_or(CrtError::WindowTooSmall)?;
        let n = self.num_vertices();
        let center = (n - 1) as f64 / 2.0;
        let reach = inner_fraction * center;
        let mut seeds: Vec<u32> =
            (0..n).filter(|&v| libm::fabs(v as f64 - center) <= reach).map(|v| v as u32).collect();
        if !seeds.contains(&(root as u32)) {
            seeds.push(root as u32);
        }
        let block = match block_containing(&self.map, &seeds) {
            Ok(b) => b,
            Err(MapError::SeedsNotCoBlocked) => return Err(CrtError::WindowTooSmall),
            Err(e) => return Err(e.into()),
        };
        let filled = fill_enclosed(&self.map, &block)?;
        let simple = collapse_parallel(&filled)?;
        RootedTriangulation::new(simple, root as u32).map_err(|report| {
            if report.has(Rule::RootMissing) || report.has(Rule::RootOnOuter) {
                CrtError::WindowTooSmall
            } else {
                CrtError::Invalid(report)
            }
        })
    }
}

#[cfg(test)]
mod tests;
