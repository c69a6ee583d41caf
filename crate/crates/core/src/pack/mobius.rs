use num_complex::Complex64;

use super::Circle;

/// Disk automorphism `z -> rot * (z - p) / (1 - conj(p) z)` with `|rot| = 1`
/// and `|p| < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskAutomorphism {
    pub rot: Complex64,
    pub p: Complex64,
}

impl DiskAutomorphism {
    /// The automorphism moving `p` to the origin without rotating.
    pub fn centering(p: Complex64) -> Self {
        Self { rot: Complex64::new(1.0, 0.0), p }
    }

    /// `z -> rot * (z + w) / (1 + conj(w) z)`.
    pub fn from_translation(rot: Complex64, w: Complex64) -> Self {
        Self { rot, p: -w }
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        self.rot * (z - self.p) / (Complex64::new(1.0, 0.0) - self.p.conj() * z)
    }

    pub fn inverse(&self) -> Self {
        // w = rot (z - p)/(1 - p* z)  <=>  z = (w/rot + p)/(1 + p* w/rot)
        //   = rot^-1 (w + rot p) / (1 + conj(rot p) w) since |rot| = 1.
        let rp = self.rot * self.p;
        Self { rot: self.rot.conj(), p: -rp }
    }

    /// Image of a circle not passing through the pole `1 / conj(p)`.
    pub fn apply_circle(&self, c: Circle) -> Circle {
        if self.p.norm_sqr() == 0.0 {
            return Circle { center: self.rot * c.center, radius: c.radius };
        }
        let pole = Complex64::new(1.0, 0.0) / self.p.conj();
        // The reflection of the pole in the circle maps to the image center.
        let mirror = c.center + c.radius * c.radius / (pole - c.center).conj();
        let center = self.apply(mirror);
        let on_circle = c.center + c.radius * (c.center - pole) / (c.center - pole).norm();
        Circle { center, radius: (self.apply(on_circle) - center).norm() }
    }
}

/// Euclidean radius of the horocycle at `zeta` (|zeta| = 1) through `w`.
pub fn horocycle_radius(zeta: Complex64, w: Complex64) -> f64 {
    let d = zeta - w;
    d.norm_sqr() / (2.0 * (d * zeta.conj()).re)
}

/// Hyperbolic center of a circle contained in the open unit disk.
pub fn hyperbolic_center(c: Circle) -> Complex64 {
    let m = c.center.norm();
    if m == 0.0 {
        return c.center;
    }
    let lo = libm::atanh(m - c.radius);
    let hi = libm::atanh(m + c.radius);
    c.center * (libm::tanh(0.5 * (lo + hi)) / m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn inverse_round_trips() {
        let m = DiskAutomorphism { rot: Complex64::from_polar(1.0, 0.7), p: Complex64::new(0.3, -0.5) };
        let inv = m.inverse();
        for z in [Complex64::new(0.1, 0.2), Complex64::new(-0.8, 0.1), Complex64::new(0.0, 0.0)] {
            assert!(close(inv.apply(m.apply(z)), z, 1e-14));
            assert!(close(m.apply(inv.apply(z)), z, 1e-14));
        }
        assert!(close(m.apply(m.p), Complex64::new(0.0, 0.0), 1e-15));
    }

    #[test]
    fn centered_circle_radius_formula() {
        for &(r, w) in
            &[(0.3, Complex64::new(0.5, 0.2)), (0.05, Complex64::new(-0.9, 0.0)), (0.7, Complex64::new(0.1, -0.6))]
        {
            let m = DiskAutomorphism::from_translation(Complex64::from_polar(1.0, 1.3), w);
            let img = m.apply_circle(Circle { center: Complex64::new(0.0, 0.0), radius: r });
            let w2 = w.norm_sqr();
            let expect = r * (1.0 - w2) / (1.0 - w2 * r * r);
            assert!((img.radius - expect).abs() < 1e-13, "{} vs {}", img.radius, expect);
            // Three points of the original circle land on the image circle.
            for k in 0..3 {
                let z = Complex64::from_polar(r, 2.0 * k as f64);
                assert!(((m.apply(z) - img.center).norm() - img.radius).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn hyperbolic_center_is_moved_to_origin_concentrically() {
        let c = Circle { center: Complex64::new(0.4, 0.3), radius: 0.2 };
        let p = hyperbolic_center(c);
        let img = DiskAutomorphism::centering(p).apply_circle(c);
        assert!(img.center.norm() < 1e-14);
    }

    #[test]
    fn horocycle_radius_recovers_circle() {
        let zeta = Complex64::from_polar(1.0, 0.9);
        let r = 0.123;
        let w = zeta * (1.0 - r) + Complex64::from_polar(r, 2.5);
        assert!((horocycle_radius(zeta, w) - r).abs() < 1e-14);
    }
}
