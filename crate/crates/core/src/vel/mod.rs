//! Vertex extremal length of the boundary and winding path families.
//!
//! Paths are vertex sequences. Lengths use set semantics: a vertex visited
//! several times by a walk is counted once. Winding walks are closed and are
//! stored with the start vertex repeated at the end.

mod annuli;
mod certificates;
mod oracle;
mod solver;

use alloc::vec;
use alloc::vec::Vec;

pub use annuli::{annulus_bound_for_packing, vel_lower_bound_annuli, AnnuliParams, AnnulusBound, AnnulusObject};
pub use certificates::{certificate_paths, circle_path, geometric_winding, ray_path, CertificateKind};
pub use oracle::{shortest_constraint, CutCover, OracleOptions};
pub use solver::{metric_value, vel_exact, VelOptions};

/// Nonnegative vertex weights.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexMetric {
    pub m: Vec<f64>,
}

impl VertexMetric {
    pub fn new(m: Vec<f64>) -> Self {
        Self { m }
    }

    pub fn constant(n: usize, value: f64) -> Self {
        Self { m: vec![value; n] }
    }

    pub fn len(&self) -> usize {
        self.m.len()
    }

    pub fn is_empty(&self) -> bool {
        self.m.is_empty()
    }

    pub fn area(&self) -> f64 {
        self.m.iter().map(|x| x * x).sum()
    }

    /// Length of a path, counting each distinct vertex once.
    pub fn length(&self, path: &[usize]) -> Result<f64, VelError> {
        let mut vs = path.to_vec();
        vs.sort_unstable();
        vs.dedup();
        let mut total = 0.0;
        for v in vs {
            total += *self.m.get(v).ok_or(VelError::MissingVertex(v))?;
        }
        Ok(total)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self { m: self.m.iter().map(|x| x * factor).collect() }
    }
}

/// `(length, area)` of `path` under `m`.
pub fn evaluate_metric(m: &VertexMetric, path: &[usize]) -> Result<(f64, f64), VelError> {
    Ok((m.length(path)?, m.area()))
}

/// The two path families. Vertices are indices into the triangulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PathFamily {
    /// Paths from `v` to a vertex of the outer face.
    Boundary(usize),
    /// Closed walks through `v`, avoiding `root`, winding once around it.
    Winding { root: usize, v: usize },
}

impl PathFamily {
    pub fn vertex(&self) -> usize {
        match *self {
            PathFamily::Boundary(v) | PathFamily::Winding { v, .. } => v,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            PathFamily::Boundary(_) => "boundary",
            PathFamily::Winding { .. } => "winding",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VelResult {
    /// Certified lower bound `len^2 / area` attained by `metric` (with
    /// `len = 1` after normalization). `+inf` never occurs for these families.
    pub value: f64,
    /// Certified upper bound from the dual solution.
    pub upper: f64,
    /// Optimal metric normalized so that the shortest path has length 1.
    pub metric: VertexMetric,
    /// Constraints carrying positive dual weight at the end of the solve.
    pub certificates: Vec<Vec<usize>>,
    /// `upper - value`.
    pub gap: f64,
    pub iterations: usize,
    /// Cover sheet bound in force when the solve finished.
    pub sheets: usize,
}

impl VelResult {
    fn trivial(value: f64, metric: VertexMetric, certificates: Vec<Vec<usize>>) -> Self {
        Self { value, upper: value, metric, certificates, gap: 0.0, iterations: 0, sheets: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum VelError {
    #[error("vertex {0} has no metric value")]
    MissingVertex(usize),
    #[error("empty family")]
    EmptyFamily,
    #[error("vertex {0} out of range")]
    OutOfRange(usize),
    #[error("iteration cap reached with gap {gap:e}")]
    IterationCap { gap: f64 },
    #[error("oracle failed: {0}")]
    Oracle(&'static str),
    #[error("sampling degenerate after {0} redraws")]
    DegenerateSampling(usize),
    #[error("packing must be centered at vertex {0}")]
    NotNormalized(usize),
}

#[cfg(test)]
mod tests;
