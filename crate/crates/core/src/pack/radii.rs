//! Hyperbolic radii of the maximal packing.
//!
//! Interior vertex `v` carries its hyperbolic radius `h_v`; boundary vertices
//! are horocycles with `h_v = inf`. The unknowns of the Newton phase are
//! `u_v = ln tanh(h_v / 2)`, in which the angle-sum map has a symmetric
//! negative definite Jacobian.
//!
//! Corner angles come from the half-angle formulas
//! `sin^2(alpha_a / 2) = sinh b sinh c / (sinh(a+b) sinh(a+c))` and
//! `cos^2(alpha_a / 2) = sinh a sinh(a+b+c) / (sinh(a+b) sinh(a+c))`, both
//! written through `E(x) = 1 - exp(-2x)` so that tiny and infinite radii keep
//! full relative precision.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use crate::planar::Triangulation;

/// `1 - exp(-2x)`, exact to rounding for small `x` and equal to 1 at `inf`.
#[inline]
fn e1(x: f64) -> f64 {
    -libm::expm1(-2.0 * x)
}

/// `(sin^2, cos^2)` of half the angle at `a` in the triangle of circles
/// `a`, `b`, `c` (`a` finite).
#[inline]
fn half_angle(a: f64, b: f64, c: f64) -> (f64, f64) {
    let den = e1(a + b) * e1(a + c);
    let p = libm::exp(-2.0 * a) * e1(b) * e1(c) / den;
    let q = e1(a) * e1(a + b + c) / den;
    (p, q)
}

/// Angle at `a` in the triangle of circles with hyperbolic radii `a`, `b`,
/// `c`. Any of them may be infinite; two horocycles at a horocycle give 0.
#[inline]
pub(crate) fn corner_angle(a: f64, b: f64, c: f64) -> f64 {
    if a.is_infinite() {
        return 0.0;
    }
    let (p, q) = half_angle(a, b, c);
    2.0 * libm::atan2(libm::sqrt(p), libm::sqrt(q))
}

#[inline]
fn h_of_u(u: f64) -> f64 {
    2.0 * libm::atanh(libm::exp(u))
}

#[inline]
fn u_of_h(h: f64) -> f64 {
    libm::log(libm::tanh(0.5 * h))
}

/// Solved radii: `h[v]` is the hyperbolic radius (`inf` on the boundary).
#[derive(Debug, Clone, PartialEq)]
pub struct HyperbolicRadii {
    pub h: Vec<f64>,
    /// Largest `|angle sum - 2 pi|` over interior vertices.
    pub residual: f64,
    pub iterations: usize,
}

impl HyperbolicRadii {
    /// Euclidean radius of interior `v` when its circle is centered at 0.
    pub fn centered_radius(&self, v: usize) -> f64 {
        libm::tanh(0.5 * self.h[v])
    }

    pub fn is_horocycle(&self, v: usize) -> bool {
        self.h[v].is_infinite()
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct SolveConfig {
    pub tol: f64,
    pub max_iters: usize,
    pub sweeps: usize,
}

pub(crate) fn angle_sum(tri: &Triangulation, h: &[f64], a: usize) -> f64 {
    let nb = tri.neighbors(a);
    let k = nb.len();
    let mut sum = 0.0;
    for i in 0..k {
        sum += corner_angle(h[a], h[nb[i]], h[nb[(i + 1) % k]]);
    }
    sum
}

fn max_residual(tri: &Triangulation, h: &[f64], interior: &[usize]) -> f64 {
    interior.iter().map(|&a| libm::fabs(angle_sum(tri, h, a) - TAU)).fold(0.0, f64::max)
}

/// Gauss-Seidel sweep: each vertex jumps to the radius that would give angle
/// sum 2 pi if its neighbors were all equal and reproduced the current sum.
fn uniform_sweep(tri: &Triangulation, h: &mut [f64], interior: &[usize]) {
    for &a in interior {
        let k = tri.neighbors(a).len() as f64;
        let theta = angle_sum(tri, h, a);
        let sa = libm::exp(-h[a]);
        let sigma = libm::sin(theta / (2.0 * k));
        let t = ((sa - sigma) / (sa * (1.0 - sigma * sa))).clamp(0.0, 1.0 - 1e-15);
        let delta = libm::sin(PI / k);
        let x = if t < 1e-12 {
            delta
        } else {
            let b = 1.0 - t;
            (-b + libm::sqrt(b * b + 4.0 * delta * delta * t)) / (2.0 * delta * t)
        };
        h[a] = -libm::log(x.clamp(1e-300, 1.0 - 1e-16));
    }
}

/// Row-compressed Jacobian over interior rows; slot 0 is the diagonal and
/// slot `1 + i` the i-th neighbor in rotation order.
struct Jacobian {
    row_start: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
}

impl Jacobian {
    fn new(tri: &Triangulation, interior: &[usize]) -> Self {
        let mut row_start = Vec::with_capacity(interior.len() + 1);
        let mut cols = Vec::new();
        row_start.push(0);
        for &a in interior {
            cols.push(a);
            cols.extend_from_slice(tri.neighbors(a));
            row_start.push(cols.len());
        }
        let vals = vec![0.0; cols.len()];
        Self { row_start, cols, vals }
    }

    /// Fills `-J` and returns the angle sums of the interior rows.
    ///
    /// With `t = tan^2(alpha / 2)`, `d alpha = sqrt(p q) d ln t` and
    /// `dh / du = sinh h`, every term below is a bounded product.
    fn assemble(&mut self, tri: &Triangulation, h: &[f64], interior: &[usize], theta: &mut [f64]) {
        self.vals.iter_mut().for_each(|x| *x = 0.0);
        for (r, &a) in interior.iter().enumerate() {
            let base = self.row_start[r];
            let nb = tri.neighbors(a);
            let k = nb.len();
            let ha = h[a];
            let ea = libm::exp(-ha);
            let mut sum = 0.0;
            for i in 0..k {
                let j = (i + 1) % k;
                let (hb, hc) = (h[nb[i]], h[nb[j]]);
                let (p, q) = half_angle(ha, hb, hc);
                sum += 2.0 * libm::atan2(libm::sqrt(p), libm::sqrt(q));
                let w = libm::sqrt(p * q);
                let all = e1(ha + hb + hc);
                let d_a = 2.0 * libm::sinh(ha) + ea + libm::exp(-(ha + 2.0 * (hb + hc))) * e1(ha) / all;
                self.vals[base] += w * d_a;
                if hb.is_finite() {
                    let d_b = libm::exp(-hb) * (1.0 - libm::exp(-2.0 * (ha + hc)) * e1(hb) / all);
                    self.vals[base + 1 + i] -= w * d_b;
                }
                if hc.is_finite() {
                    let d_c = libm::exp(-hc) * (1.0 - libm::exp(-2.0 * (ha + hb)) * e1(hc) / all);
                    self.vals[base + 1 + j] -= w * d_c;
                }
            }
            theta[r] = sum;
        }
    }

    fn mul(&self, x: &[f64], y: &mut [f64], interior: &[usize]) {
        for (r, &a) in interior.iter().enumerate() {
            let mut acc = 0.0;
            for slot in self.row_start[r]..self.row_start[r + 1] {
                acc += self.vals[slot] * x[self.cols[slot]];
            }
            y[a] = acc;
        }
    }

    fn diag(&self, r: usize) -> f64 {
        self.vals[self.row_start[r]]
    }
}

/// Jacobi-preconditioned conjugate gradients for `A x = b` on interior
/// entries (`A = -J` is symmetric positive definite). Vectors are indexed by
/// vertex and vanish on the boundary.
fn conjugate_gradient(jac: &Jacobian, interior: &[usize], b: &[f64], x: &mut [f64]) {
    let n = b.len();
    let mut r = b.to_vec();
    x.iter_mut().for_each(|v| *v = 0.0);
    let inv_diag: Vec<f64> = (0..interior.len()).map(|i| 1.0 / jac.diag(i)).collect();
    let mut z = vec![0.0; n];
    for (i, &a) in interior.iter().enumerate() {
        z[a] = r[a] * inv_diag[i];
    }
    let mut p = z.clone();
    let mut ap = vec![0.0; n];
    let dot = |x: &[f64], y: &[f64]| interior.iter().map(|&a| x[a] * y[a]).sum::<f64>();
    let mut rz = dot(&r, &z);
    let b_norm = libm::sqrt(dot(b, b));
    if b_norm == 0.0 {
        return;
    }
    let max_iter = 10 * interior.len() + 100;
    for _ in 0..max_iter {
        jac.mul(&p, &mut ap, interior);
        let pap = dot(&p, &ap);
        if !(pap > 0.0) {
            break;
        }
        let alpha = rz / pap;
        for &a in interior {
            x[a] += alpha * p[a];
            r[a] -= alpha * ap[a];
        }
        if libm::sqrt(dot(&r, &r)) <= 1e-13 * b_norm {
            break;
        }
        for (i, &a) in interior.iter().enumerate() {
            z[a] = r[a] * inv_diag[i];
        }
        let rz_new = dot(&r, &z);
        let beta = rz_new / rz;
        rz = rz_new;
        for &a in interior {
            p[a] = z[a] + beta * p[a];
        }
    }
}

/// Solves for the maximal-packing radii. Returns the best radii found and
/// whether the residual reached `tol`.
pub(crate) fn solve(tri: &Triangulation, cfg: SolveConfig) -> (HyperbolicRadii, bool) {
    let n = tri.num_vertices();
    let interior: Vec<usize> = tri.interior_vertices().collect();
    let mut h = vec![f64::INFINITY; n];
    for &a in &interior {
        h[a] = core::f64::consts::LN_2;
    }
    if interior.is_empty() {
        return (HyperbolicRadii { h, residual: 0.0, iterations: 0 }, true);
    }
    for _ in 0..cfg.sweeps {
        uniform_sweep(tri, &mut h, &interior);
    }

    let mut u = vec![0.0; n];
    for &a in &interior {
        u[a] = u_of_h(h[a]);
    }
    let mut jac = Jacobian::new(tri, &interior);
    let mut theta = vec![0.0; interior.len()];
    let mut rhs = vec![0.0; n];
    let mut step = vec![0.0; n];
    let mut trial_h = h.clone();
    let mut trial_u = u.clone();
    let mut iterations = 0;
    let norm2 = |theta: &[f64]| theta.iter().map(|t| (t - TAU) * (t - TAU)).sum::<f64>();

    let mut residual = max_residual(tri, &h, &interior);
    // Newton converges quadratically, so a few extra steps past `tol` are cheap
    // and tighten the layout.
    while residual > 1e-3 * cfg.tol && iterations < cfg.max_iters {
        iterations += 1;
        jac.assemble(tri, &h, &interior, &mut theta);
        let current = norm2(&theta);
        for (r, &a) in interior.iter().enumerate() {
            rhs[a] = theta[r] - TAU;
        }
        conjugate_gradient(&jac, &interior, &rhs, &mut step);
        let biggest = interior.iter().map(|&a| libm::fabs(step[a])).fold(0.0, f64::max);
        let mut lambda = if biggest > 2.0 { 2.0 / biggest } else { 1.0 };
        let mut accepted = false;
        for _ in 0..40 {
            let mut feasible = true;
            for &a in &interior {
                let v = u[a] + lambda * step[a];
                let hv = h_of_u(v);
                if !(v < 0.0 && hv.is_finite() && hv > 0.0) {
                    feasible = false;
                    break;
                }
                trial_u[a] = v;
                trial_h[a] = hv;
            }
            if feasible {
                let trial: f64 = interior
                    .iter()
                    .map(|&a| {
                        let d = angle_sum(tri, &trial_h, a) - TAU;
                        d * d
                    })
                    .sum();
                if trial < current || trial == 0.0 {
                    accepted = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if !accepted {
            break;
        }
        core::mem::swap(&mut u, &mut trial_u);
        core::mem::swap(&mut h, &mut trial_h);
        trial_u.copy_from_slice(&u);
        trial_h.copy_from_slice(&h);
        residual = max_residual(tri, &h, &interior);
    }
    let ok = residual <= cfg.tol;
    (HyperbolicRadii { h, residual, iterations }, ok)
}
