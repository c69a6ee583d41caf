//! Explicit family members read off a packing: circle paths (winding family)
//! and ray paths (boundary family).

use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng as _;

use super::{PathFamily, VelError};
use crate::pack::Packing;
use crate::planar::Triangulation;
use crate::rng::Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateKind {
    /// Walks along the circle `|z| = t` through `v`.
    Circle,
    /// Paths along a ray from the origin to the unit circle.
    Ray,
}

fn wrap(angle: f64) -> f64 {
    let a = angle % TAU;
    if a < 0.0 {
        a + TAU
    } else {
        a
    }
}

fn consecutive_adjacent(tri: &Triangulation, path: &[usize]) -> bool {
    path.windows(2).all(|w| tri.is_edge(w[0], w[1]))
}

/// The closed walk met by the circle of radius `t` about the origin,
/// traversed counterclockwise from the direction of `v`'s center. `None` if
/// the circle misses `v` or the walk is degenerate at this `t`.
pub fn circle_path(packing: &Packing, tri: &Triangulation, v: usize, t: f64) -> Option<Vec<usize>> {
    let start = packing.center(v).arg();
    let mut arcs: Vec<(f64, usize)> = Vec::new();
    for (u, c) in packing.circles().iter().enumerate() {
        let d = c.center.norm();
        if d == 0.0 || !(libm::fabs(d - t) < c.radius && c.radius < d + t) {
            continue;
        }
        let cos_beta = ((d * d + t * t - c.radius * c.radius) / (2.0 * d * t)).clamp(-1.0, 1.0);
        let beta = libm::acos(cos_beta);
        let lo = wrap(c.center.arg() - beta - start);
        // v's arc straddles the starting direction.
        arcs.push((if u == v { -1.0 } else { lo }, u));
    }
    if !arcs.iter().any(|&(_, u)| u == v) {
        return None;
    }
    arcs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut walk: Vec<usize> = arcs.iter().map(|&(_, u)| u).collect();
    walk.push(v);
    walk.dedup();
    consecutive_adjacent(tri, &walk).then_some(walk)
}

/// The path of circles met by the ray of angle `theta` from the origin, in
/// order. The packing must be centered at the path's first vertex.
pub fn ray_path(packing: &Packing, tri: &Triangulation, theta: f64) -> Option<Vec<usize>> {
    let rot = Complex64::from_polar(1.0, -theta);
    let mut hits: Vec<(f64, usize)> = Vec::new();
    for (u, c) in packing.circles().iter().enumerate() {
        let z = c.center * rot;
        let q = z.im;
        if libm::fabs(q) >= c.radius {
            continue;
        }
        let half = libm::sqrt(c.radius * c.radius - q * q);
        if z.re + half <= 0.0 {
            continue;
        }
        hits.push(((z.re - half).max(0.0), u));
    }
    hits.sort_by(|a, b| a.0.total_cmp(&b.0));
    let path: Vec<usize> = hits.iter().map(|&(_, u)| u).collect();
    let last = *path.last()?;
    (tri.is_outer(last) && consecutive_adjacent(tri, &path)).then_some(path)
}

/// Winding number of a closed walk of circle centers around `root`'s center.
pub fn geometric_winding(packing: &Packing, walk: &[usize], root: usize) -> i64 {
    let c0 = packing.center(root);
    let mut total = 0.0;
    for w in walk.windows(2) {
        total += ((packing.center(w[1]) - c0) / (packing.center(w[0]) - c0)).arg();
    }
    libm::round(total / TAU) as i64
}

/// `samples` family members for `v`, sampled with stratified uniform
/// parameters and redrawn (up to 16 times per stratum) when degenerate.
///
/// Circle paths need a packing centered at the root (`v` not the root) and
/// belong to the winding family; ray paths need a packing centered at `v` and
/// belong to the boundary family.
pub fn certificate_paths(
    packing: &Packing,
    tri: &Triangulation,
    v: usize,
    kind: CertificateKind,
    samples: usize,
    rng: &mut Rng,
) -> Result<(PathFamily, Vec<Vec<usize>>), VelError> {
    const RETRIES: usize = 16;
    let center = packing.center_vertex().ok_or(VelError::NotNormalized(v))?;
    let (fam, lo, hi) = match kind {
        CertificateKind::Circle => {
            if center == v {
                return Err(VelError::EmptyFamily);
            }
            let d = packing.center(v).norm();
            let r = packing.radius(v);
            (PathFamily::Winding { root: center, v }, d - r, d + r)
        }
        CertificateKind::Ray => {
            if center != v {
                return Err(VelError::NotNormalized(v));
            }
            if tri.is_outer(v) {
                return Err(VelError::NotNormalized(v));
            }
            (PathFamily::Boundary(v), 0.0, TAU)
        }
    };
    let mut out = Vec::with_capacity(samples);
    for i in 0..samples {
        let mut found = None;
        for _ in 0..RETRIES {
            let x = lo + (hi - lo) * (i as f64 + rng.random::<f64>()) / samples as f64;
            found = match kind {
                CertificateKind::Circle => circle_path(packing, tri, v, x),
                CertificateKind::Ray => ray_path(packing, tri, x),
            };
            if found.is_some() {
                break;
            }
        }
        out.push(found.ok_or(VelError::DegenerateSampling(RETRIES))?);
    }
    Ok((fam, out))
}
