//! Explicit lower-bound metrics built from dyadic annuli.

use alloc::vec::Vec;

use num_complex::Complex64;

use super::oracle::{shortest_constraint, OracleOptions};
use super::{PathFamily, VelError, VertexMetric};
use crate::pack::Packing;
use crate::planar::Triangulation;

/// A vertex's geometric footprint: a disk of radius `extent` about `anchor`,
/// and the weight (circle radius or cell diameter) used by the metric.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnulusObject {
    pub anchor: Complex64,
    pub extent: f64,
    pub weight: f64,
}

/// Annuli `A_k = {r_{k-1} < |w - center| < r_k}` with `r_k = 2^k r0`,
/// `k = 1..=levels`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnuliParams {
    pub center: Complex64,
    pub r0: f64,
    pub levels: i64,
}

impl AnnuliParams {
    /// `r0 = 5 eps` and `levels = floor(log2(1 / (5 eps))) - 2`, where `eps`
    /// bounds every circle radius.
    pub fn from_max_radius(center: Complex64, eps: f64) -> Self {
        let r0 = 5.0 * eps;
        let levels = libm::floor(libm::log2(1.0 / r0)) as i64 - 2;
        Self { center, r0, levels }
    }

    pub fn radius(&self, k: i64) -> f64 {
        libm::ldexp(self.r0, k as i32)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnnulusBound {
    /// `len^2 / area`, or 0 when no annulus is available.
    pub value: f64,
    pub len: f64,
    pub area: f64,
    pub levels: i64,
    /// Set when `levels < 1` or the metric vanishes, in which case `value = 0`.
    pub warning: bool,
    pub metric: VertexMetric,
}

/// Builds `m(u) = weight_u / r_k` for objects inside the k-th annulus and
/// returns `len_m(fam)^2 / area(m)`, a lower bound on the VEL of `fam`.
pub fn vel_lower_bound_annuli(
    tri: &Triangulation,
    objects: &[AnnulusObject],
    params: &AnnuliParams,
    fam: PathFamily,
) -> Result<AnnulusBound, VelError> {
    let n = tri.num_vertices();
    let empty = |levels| AnnulusBound {
        value: 0.0,
        len: 0.0,
        area: 0.0,
        levels,
        warning: true,
        metric: VertexMetric::constant(n, 0.0),
    };
    if params.levels < 1 {
        return Ok(empty(params.levels));
    }
    let m: Vec<f64> = objects
        .iter()
        .map(|o| {
            let d = (o.anchor - params.center).norm();
            (1..=params.levels)
                .find(|&k| d - o.extent > params.radius(k - 1) && d + o.extent < params.radius(k))
                .map_or(0.0, |k| o.weight / params.radius(k))
        })
        .collect();
    let metric = VertexMetric::new(m);
    let area = metric.area();
    if area == 0.0 {
        return Ok(empty(params.levels));
    }
    let path = shortest_constraint(tri, &metric, fam, &OracleOptions::default())?;
    let len = metric.length(&path)?;
    Ok(AnnulusBound { value: len * len / area, len, area, levels: params.levels, warning: false, metric })
}

/// The annulus bound for vertex `v` of a packing centered at `root`, with
/// `eps` the largest radius and annuli about `v`'s center. The winding family
/// is used when `|c_v| >= 1/2`, the boundary family otherwise.
pub fn annulus_bound_for_packing(
    tri: &Triangulation,
    packing: &Packing,
    root: usize,
    v: usize,
) -> Result<(PathFamily, AnnulusBound), VelError> {
    let objects: Vec<AnnulusObject> = packing
        .circles()
        .iter()
        .map(|c| AnnulusObject { anchor: c.center, extent: c.radius, weight: c.radius })
        .collect();
    let params = AnnuliParams::from_max_radius(packing.center(v), packing.max_radius());
    let fam = if packing.center(v).norm() >= 0.5 { PathFamily::Winding { root, v } } else { PathFamily::Boundary(v) };
    Ok((fam, vel_lower_bound_annuli(tri, &objects, &params, fam)?))
}
