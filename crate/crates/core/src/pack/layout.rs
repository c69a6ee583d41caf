//! Placement of circles from solved hyperbolic radii.
//!
//! Circles are placed face by face. Interior circles are tracked by their
//! hyperbolic center, horocycles by their point at infinity and Euclidean
//! radius; Euclidean circles are produced only at the end. Faces are placed
//! from the edge whose smaller circle is largest, so each circle hangs off the
//! best-conditioned neighbors available. Circles too small to separate from
//! the unit circle in floating point become points on it.

use alloc::collections::{BTreeMap, BinaryHeap};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::f64::consts::TAU;

use num_complex::Complex64;

use super::mobius::{horocycle_radius, DiskAutomorphism};
use super::radii::{corner_angle, HyperbolicRadii};
use super::Circle;
use crate::planar::Triangulation;

#[derive(Debug, Clone, Copy)]
enum Placed {
    Unset,
    Interior(Complex64),
    Horocycle { zeta: Complex64, radius: f64 },
    Degenerate(Complex64),
}

fn tanh_half(h: f64) -> f64 {
    libm::tanh(0.5 * h)
}

/// Euclidean circle of an interior circle with hyperbolic center `q` and
/// `t = tanh(h / 2)`.
fn euclidean(q: Complex64, t: f64) -> Circle {
    let rho2 = q.norm_sqr();
    let denom = 1.0 - rho2 * t * t;
    Circle { center: q * ((1.0 - t * t) / denom), radius: t * (1.0 - rho2) / denom }
}

struct Layout<'a> {
    h: &'a [f64],
    placed: Vec<Placed>,
}

impl Layout<'_> {
    fn is_set(&self, v: usize) -> bool {
        !matches!(self.placed[v], Placed::Unset)
    }

    fn circle(&self, v: usize) -> Circle {
        match self.placed[v] {
            Placed::Interior(q) => euclidean(q, tanh_half(self.h[v])),
            Placed::Horocycle { zeta, radius } => Circle { center: zeta * (1.0 - radius), radius },
            Placed::Degenerate(zeta) => Circle { center: zeta, radius: 0.0 },
            Placed::Unset => Circle { center: Complex64::new(f64::NAN, f64::NAN), radius: f64::NAN },
        }
    }

    /// Direction of `v`'s circle seen from the interior circle with
    /// hyperbolic center `p` moved to the origin.
    fn direction_from(&self, frame: &DiskAutomorphism, v: usize) -> f64 {
        match self.placed[v] {
            Placed::Interior(q) => frame.apply(q).arg(),
            Placed::Horocycle { zeta, .. } | Placed::Degenerate(zeta) => frame.apply(zeta).arg(),
            Placed::Unset => unreachable!("direction of an unplaced circle"),
        }
    }

    fn set(&mut self, c: usize, placed: Placed) {
        self.placed[c] = placed;
        let circle = self.circle(c);
        let fine = circle.radius > 0.0 && circle.radius.is_finite() && circle.center.norm() < 1.0;
        if !fine {
            let z = match placed {
                Placed::Interior(q) => q,
                Placed::Horocycle { zeta, .. } | Placed::Degenerate(zeta) => zeta,
                Placed::Unset => unreachable!(),
            };
            self.placed[c] = Placed::Degenerate(z / z.norm());
        }
    }

    /// Places `c` tangent to interior `a` at angle `phi` in `a`'s frame.
    fn place_around(&mut self, a: usize, c: usize, phi: f64) {
        let Placed::Interior(pa) = self.placed[a] else { unreachable!() };
        let back = DiskAutomorphism::centering(pa).inverse();
        let dir = Complex64::from_polar(1.0, phi);
        let ta = tanh_half(self.h[a]);
        let placed = if self.h[c].is_finite() {
            let tc = tanh_half(self.h[c]);
            let q = dir * ((ta + tc) / (1.0 + ta * tc));
            Placed::Interior(back.apply(q))
        } else {
            let zeta = back.apply(dir);
            let zeta = zeta / zeta.norm();
            let w = back.apply(dir * ta);
            Placed::Horocycle { zeta, radius: horocycle_radius(zeta, w) }
        };
        self.set(c, placed);
    }

    /// Places `c` where `a`, `b` are tangent horocycles and `(a, b, c)` is
    /// counterclockwise, working in the upper half-plane with `a` sent to
    /// infinity.
    fn place_between_horocycles(&mut self, a: usize, b: usize, c: usize) {
        let (Placed::Horocycle { zeta: za, radius: ra }, Placed::Horocycle { zeta: zb, .. }) =
            (self.placed[a], self.placed[b])
        else {
            unreachable!()
        };
        let height = (1.0 - ra) / ra;
        let theta = (zb * za.conj()).arg();
        let xb = -libm::cos(0.5 * theta) / libm::sin(0.5 * theta);
        let hc = self.h[c];
        let sc = libm::exp(-hc);
        let xc = xb + height * libm::sqrt(-libm::expm1(-2.0 * hc));
        let to_disk = |w: Complex64| za * (w - Complex64::i()) / (w + Complex64::i());
        let placed = if hc.is_finite() {
            Placed::Interior(to_disk(Complex64::new(xc, height * sc)))
        } else {
            let zeta = to_disk(Complex64::new(xc, 0.0));
            let zeta = zeta / zeta.norm();
            let w = to_disk(Complex64::new(xc, height));
            Placed::Horocycle { zeta, radius: horocycle_radius(zeta, w) }
        };
        self.set(c, placed);
    }

    /// Places `c` given the placed tangent pair `a`, `b` with `(a, b, c)` a
    /// counterclockwise face.
    fn place_third(&mut self, a: usize, b: usize, c: usize) {
        let h = self.h;
        match (self.placed[a], self.placed[b]) {
            (Placed::Degenerate(z), _) | (_, Placed::Degenerate(z)) => self.placed[c] = Placed::Degenerate(z),
            (Placed::Interior(pa), _) => {
                let phi = self.direction_from(&DiskAutomorphism::centering(pa), b) + corner_angle(h[a], h[b], h[c]);
                self.place_around(a, c, phi);
            }
            (_, Placed::Interior(pb)) => {
                let phi = self.direction_from(&DiskAutomorphism::centering(pb), a) - corner_angle(h[b], h[c], h[a]);
                self.place_around(b, c, phi);
            }
            _ => self.place_between_horocycles(a, b, c),
        }
    }
}

/// Pending face `(x, y, z)` across the placed edge `(x, y)`, ordered by the
/// smaller Euclidean radius on that edge (largest first), then by face index.
struct Pending {
    weight: f64,
    face: usize,
    corners: [usize; 3],
}

impl PartialEq for Pending {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Pending {}

impl PartialOrd for Pending {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Pending {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight.total_cmp(&other.weight).then_with(|| other.face.cmp(&self.face))
    }
}

/// Lays out the packing with `pivot` (an interior vertex) centered at the
/// origin, or with the first face's horocycles placed symmetrically when there
/// is no pivot. Circles are then rotated so the boundary vertex with the
/// smallest label sits on the positive real axis.
pub(crate) fn layout(tri: &Triangulation, radii: &HyperbolicRadii, pivot: Option<usize>) -> Vec<Circle> {
    let n = tri.num_vertices();
    let faces = tri.faces();
    // Directed edge -> (face index, vertex opposite the edge).
    let mut third: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
    for (i, f) in faces.iter().enumerate() {
        for k in 0..3 {
            third.insert((f[k], f[(k + 1) % 3]), (i, f[(k + 2) % 3]));
        }
    }
    let mut visited = vec![false; faces.len()];
    let mut lay = Layout { h: &radii.h, placed: vec![Placed::Unset; n] };
    let mut heap: BinaryHeap<Pending> = BinaryHeap::new();

    let start = match pivot.filter(|&p| radii.h[p].is_finite()) {
        Some(p) => {
            lay.placed[p] = Placed::Interior(Complex64::new(0.0, 0.0));
            let b = tri.neighbors(p)[0];
            lay.place_around(p, b, 0.0);
            let (f, c) = third[&(p, b)];
            lay.place_third(p, b, c);
            (f, [p, b, c])
        }
        None => {
            let Some(&[a, b, c]) = faces.first() else { return Vec::new() };
            if let Some(p) = [a, b, c].into_iter().find(|&v| radii.h[v].is_finite()) {
                return layout(tri, radii, Some(p));
            }
            let r = 2.0 * libm::sqrt(3.0) - 3.0;
            for (k, v) in [a, b, c].into_iter().enumerate() {
                let zeta = Complex64::from_polar(1.0, TAU * k as f64 / 3.0);
                lay.placed[v] = Placed::Horocycle { zeta, radius: r };
            }
            (0, [a, b, c])
        }
    };
    visited[start.0] = true;
    let expand = |lay: &Layout, heap: &mut BinaryHeap<Pending>, f: [usize; 3]| {
        for k in 0..3 {
            let (x, y) = (f[k], f[(k + 1) % 3]);
            if let Some(&(g, z)) = third.get(&(y, x)) {
                let weight = lay.circle(x).radius.min(lay.circle(y).radius);
                heap.push(Pending { weight, face: g, corners: [y, x, z] });
            }
        }
    };
    expand(&lay, &mut heap, start.1);
    while let Some(Pending { face, corners, .. }) = heap.pop() {
        if visited[face] {
            continue;
        }
        visited[face] = true;
        let [y, x, z] = corners;
        if !lay.is_set(z) {
            lay.place_third(y, x, z);
        }
        expand(&lay, &mut heap, corners);
    }

    let mut circles: Vec<Circle> = (0..n).map(|v| lay.circle(v)).collect();
    super::rotate_to_reference(tri, &mut circles);
    circles
}
