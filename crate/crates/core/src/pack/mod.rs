//! Maximal circle packings in the unit disk.
//!
//! [`pack_in_disk`] solves for hyperbolic radii (boundary circles are
//! horocycles), lays the circles out with the root at the origin and fixes the
//! rotation so that the smallest-label boundary vertex lies on the positive
//! real axis. [`normalize_root`] re-centers an existing packing at another
//! interior vertex with a disk automorphism.

mod layout;
mod mobius;
mod radii;

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::planar::{RootedTriangulation, Triangulation};

pub use mobius::{horocycle_radius, hyperbolic_center, DiskAutomorphism};
pub use radii::HyperbolicRadii;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub center: Complex64,
    pub radius: f64,
}

impl Circle {
    pub fn new(x: f64, y: f64, radius: f64) -> Self {
        Self { center: Complex64::new(x, y), radius }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PackOptions {
    /// Target for the largest interior angle-sum error.
    pub tol: f64,
    /// Newton iteration cap.
    pub max_iters: usize,
    /// Uniform-neighbor sweeps run before Newton.
    pub warm_sweeps: usize,
}

impl Default for PackOptions {
    fn default() -> Self {
        Self { tol: 1e-9, max_iters: 200, warm_sweeps: 30 }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PackError {
    #[error("radius iteration did not converge (best angle residual {residual:e} after {iterations} iterations)")]
    NoConvergence { residual: f64, iterations: usize },
    #[error("tolerance must be positive")]
    BadTolerance,
    #[error("vertex {0} is on the outer face")]
    OnBoundary(u32),
    #[error("vertex index {0} out of range")]
    OutOfRange(usize),
}

/// One circle per vertex (indexed like the triangulation's vertices).
#[derive(Debug, Clone, PartialEq)]
pub struct Packing {
    circles: Vec<Circle>,
    center_vertex: Option<usize>,
    residual: f64,
}

impl Packing {
    pub fn from_circles(circles: Vec<Circle>, center_vertex: Option<usize>, residual: f64) -> Self {
        Self { circles, center_vertex, residual }
    }

    pub fn circles(&self) -> &[Circle] {
        &self.circles
    }

    pub fn circle(&self, v: usize) -> Circle {
        self.circles[v]
    }

    pub fn center(&self, v: usize) -> Complex64 {
        self.circles[v].center
    }

    pub fn radius(&self, v: usize) -> f64 {
        self.circles[v].radius
    }

    pub fn len(&self) -> usize {
        self.circles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circles.is_empty()
    }

    /// Vertex whose circle was placed at the origin, if any.
    pub fn center_vertex(&self) -> Option<usize> {
        self.center_vertex
    }

    /// Angle-sum residual reached by the radius solver.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn max_radius(&self) -> f64 {
        self.circles.iter().map(|c| c.radius).fold(0.0, f64::max)
    }

    pub fn total_area(&self) -> f64 {
        self.circles.iter().map(|c| core::f64::consts::PI * c.radius * c.radius).sum()
    }

    /// Geometric residuals of the packing against `tri`.
    pub fn check(&self, tri: &Triangulation) -> Residuals {
        check_packing(&self.circles, tri)
    }
}

/// Worst violations of the packing conditions (all zero for an exact packing).
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Residuals {
    /// max over edges of `| |c_u - c_v| - (r_u + r_v) |`
    pub tangency: f64,
    /// max over non-edges of `(r_u + r_v) - |c_u - c_v|`, clipped at 0
    pub overlap: f64,
    /// max over boundary vertices of `| |c_b| + r_b - 1 |`
    pub boundary: f64,
    /// max over all vertices of `|c_v| + r_v - 1`, clipped at 0
    pub containment: f64,
}

impl Residuals {
    pub fn max(&self) -> f64 {
        self.tangency.max(self.overlap).max(self.boundary).max(self.containment)
    }
}

fn check_packing(circles: &[Circle], tri: &Triangulation) -> Residuals {
    let mut res = Residuals::default();
    let n = circles.len();
    for u in 0..n {
        let cu = circles[u];
        for &v in tri.neighbors(u) {
            if v > u {
                let d = (cu.center - circles[v].center).norm();
                res.tangency = res.tangency.max(libm::fabs(d - cu.radius - circles[v].radius));
            }
        }
        let reach = cu.center.norm() + cu.radius - 1.0;
        if tri.is_outer(u) {
            res.boundary = res.boundary.max(libm::fabs(reach));
        }
        res.containment = res.containment.max(reach.max(0.0));
        if !reach.is_finite() || !res.tangency.is_finite() {
            res.tangency = f64::INFINITY;
        }
    }
    // Sweep in x: only circles whose x-extents overlap can intersect.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        let ka = circles[a].center.re - circles[a].radius;
        let kb = circles[b].center.re - circles[b].radius;
        ka.total_cmp(&kb)
    });
    let mut active: Vec<usize> = Vec::new();
    for &u in &order {
        let cu = circles[u];
        let left = cu.center.re - cu.radius;
        active.retain(|&w| circles[w].center.re + circles[w].radius > left);
        for &w in &active {
            if tri.is_edge(u, w) {
                continue;
            }
            let cw = circles[w];
            let gap = cu.radius + cw.radius - (cu.center - cw.center).norm();
            res.overlap = res.overlap.max(gap);
        }
        active.push(u);
    }
    res.overlap = res.overlap.max(0.0);
    res
}

/// Rotates all circles so that the boundary vertex with the smallest label
/// has its center on the positive real axis.
pub(crate) fn rotate_to_reference(tri: &Triangulation, circles: &mut [Circle]) {
    let Some(b) = tri.outer_cycle().iter().copied().min_by_key(|&v| tri.label(v)) else { return };
    let c = circles[b].center;
    let m = c.norm();
    if !(m > 0.0) {
        return;
    }
    let rot = c.conj() / m;
    for circle in circles.iter_mut() {
        circle.center *= rot;
    }
}

/// Hyperbolic radii of the maximal packing of `tri`.
pub fn solve_radii(tri: &Triangulation, opts: &PackOptions) -> Result<HyperbolicRadii, PackError> {
    if !(opts.tol > 0.0) {
        return Err(PackError::BadTolerance);
    }
    let cfg = radii::SolveConfig { tol: opts.tol, max_iters: opts.max_iters, sweeps: opts.warm_sweeps };
    let (r, ok) = radii::solve(tri, cfg);
    if ok {
        Ok(r)
    } else {
        Err(PackError::NoConvergence { residual: r.residual, iterations: r.iterations })
    }
}

/// Lays out solved radii with interior vertex `pivot` at the origin.
pub fn layout_at(tri: &Triangulation, radii: &HyperbolicRadii, pivot: usize) -> Result<Packing, PackError> {
    if pivot >= tri.num_vertices() {
        return Err(PackError::OutOfRange(pivot));
    }
    if tri.is_outer(pivot) {
        return Err(PackError::OnBoundary(tri.label(pivot)));
    }
    let circles = layout::layout(tri, radii, Some(pivot));
    Ok(Packing { circles, center_vertex: Some(pivot), residual: radii.residual })
}

/// Maximal packing of a triangulation without a root. When interior vertices
/// exist the one with the smallest index is placed at the origin.
pub fn pack_triangulation(tri: &Triangulation, opts: &PackOptions) -> Result<Packing, PackError> {
    let radii = solve_radii(tri, opts)?;
    let pivot = tri.interior_vertices().next();
    let circles = layout::layout(tri, &radii, pivot);
    Ok(Packing { circles, center_vertex: pivot, residual: radii.residual })
}

/// Maximal packing of `tri` in the unit disk with the root circle centered
/// at the origin.
pub fn pack_in_disk(tri: &RootedTriangulation, opts: &PackOptions) -> Result<Packing, PackError> {
    let radii = solve_radii(tri, opts)?;
    layout_at(tri, &radii, tri.root())
}

/// Applies the disk automorphism that centers `v`'s circle at the origin,
/// then fixes the rotation as in [`pack_in_disk`].
pub fn normalize_root(p: &Packing, tri: &Triangulation, v: usize) -> Result<Packing, PackError> {
    if v >= p.len() {
        return Err(PackError::OutOfRange(v));
    }
    if tri.is_outer(v) {
        return Err(PackError::OnBoundary(tri.label(v)));
    }
    let m = DiskAutomorphism::centering(hyperbolic_center(p.circle(v)));
    let mut circles: Vec<Circle> = p.circles.iter().map(|&c| m.apply_circle(c)).collect();
    circles[v].center = Complex64::new(0.0, 0.0);
    for &b in tri.outer_cycle() {
        // Keep horocycles exactly internally tangent.
        let c = circles[b];
        let zeta = c.center / c.center.norm();
        circles[b].center = zeta * (1.0 - c.radius);
    }
    rotate_to_reference(tri, &mut circles);
    Ok(Packing { circles, center_vertex: Some(v), residual: p.residual })
}
