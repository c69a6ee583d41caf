use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::generate::{random_insertion, stacked_wheel, wheel};
use crate::pack::{normalize_root, pack_in_disk, PackOptions};
use crate::rng::rng_from_seed;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

#[test]
fn k4_values() {
    let t = wheel(3);
    let r = t.root();
    let b = vel_exact(&t, PathFamily::Boundary(r), &VelOptions::default()).unwrap();
    assert!(close(b.value, 4.0 / 3.0, 1e-7), "{}", b.value);
    assert!(b.upper >= b.value - 1e-12);
    let v = t.outer_cycle()[0];
    let w = vel_exact(&t, PathFamily::Winding { root: r, v }, &VelOptions::default()).unwrap();
    assert!(close(w.value, 3.0, 1e-7), "{}", w.value);
}

#[test]
fn wheel7_values() {
    let t = wheel(6);
    let r = t.root();
    let b = vel_exact(&t, PathFamily::Boundary(r), &VelOptions::default()).unwrap();
    assert!(close(b.value, 7.0 / 6.0, 1e-7), "{}", b.value);
    let v = t.outer_cycle()[2];
    let w = vel_exact(&t, PathFamily::Winding { root: r, v }, &VelOptions::default()).unwrap();
    assert!(close(w.value, 6.0, 1e-7), "{}", w.value);
}

#[test]
fn trivial_cases() {
    let t = wheel(5);
    let o = t.outer_cycle()[0];
    let r = vel_exact(&t, PathFamily::Boundary(o), &VelOptions::default()).unwrap();
    assert_eq!(r.value, 1.0);
    let z = vel_exact(&t, PathFamily::Winding { root: t.root(), v: t.root() }, &VelOptions::default()).unwrap();
    assert_eq!(z.value, 0.0);
}

#[test]
fn set_semantics_length() {
    let m = VertexMetric::new(vec![1.0, 2.0, 3.0]);
    assert_eq!(m.length(&[0, 1, 0, 2, 0]).unwrap(), 6.0);
    assert_eq!(m.length(&[5]), Err(VelError::MissingVertex(5)));
}

#[test]
fn metric_is_normalized_and_reproduces_value() {
    let t = stacked_wheel(5, 2);
    let r = t.root();
    let v = t.neighbors(r)[0];
    for fam in [PathFamily::Boundary(v), PathFamily::Winding { root: r, v }] {
        let res = vel_exact(&t, fam, &VelOptions::default()).unwrap();
        let (len, area, val) = metric_value(&t, &res.metric, fam, 4).unwrap();
        assert!(close(len, 1.0, 1e-9), "{fam:?} {len}");
        assert!(close(1.0 / area, res.value, 1e-9 * res.value));
        assert!(close(val, res.value, 1e-9 * res.value));
        assert!(res.upper - res.value <= 1e-8 * res.value.max(1.0), "{fam:?} gap {}", res.upper - res.value);
        for c in &res.certificates {
            assert!(res.metric.length(c).unwrap() >= 1.0 - 1e-9);
        }
    }
}

#[test]
fn winding_paths_wind_once() {
    let t = stacked_wheel(6, 3);
    let r = t.root();
    let cover = CutCover::new(&t, r);
    let m = vec![1.0; t.num_vertices()];
    for v in (0..t.num_vertices()).filter(|&v| v != r) {
        let p = cover.shortest_winding(&m, v, 3).unwrap();
        assert_eq!(p.first(), Some(&v));
        assert_eq!(p.last(), Some(&v));
        assert!(!p.contains(&r));
        assert_eq!(cover.winding(&p).map(i64::abs), Some(1), "{p:?}");
    }
}

#[test]
fn annulus_bound_below_exact() {
    let mut rng = rng_from_seed(11);
    let t = random_insertion(120, &mut rng);
    let p = pack_in_disk(&t, &PackOptions::default()).unwrap();
    let r = t.root();
    for v in [r, t.neighbors(r)[0], t.outer_cycle()[0]] {
        let (fam, ab) = annulus_bound_for_packing(&t, &p, r, v).unwrap();
        let ex = vel_exact(&t, fam, &VelOptions::default()).unwrap();
        assert!(ab.value <= ex.upper + 1e-9, "{v}: {} > {}", ab.value, ex.upper);
    }
}

#[test]
fn certificates_are_family_members() {
    let mut rng = rng_from_seed(5);
    let t = random_insertion(80, &mut rng);
    let r = t.root();
    let p = pack_in_disk(&t, &PackOptions::default()).unwrap();
    let cover = CutCover::new(&t, r);
    let interior: Vec<usize> = t.interior_vertices().filter(|&v| v != r).collect();
    for &v in interior.iter().take(6) {
        let (fam, walks) = certificate_paths(&p, &t, v, CertificateKind::Circle, 12, &mut rng).unwrap();
        assert_eq!(fam, PathFamily::Winding { root: r, v });
        for w in &walks {
            assert_eq!(w[0], v);
            assert_eq!(geometric_winding(&p, w, r), 1);
            assert_eq!(cover.winding(w).map(i64::abs), Some(1));
        }
        let q = normalize_root(&p, &t, v).unwrap();
        let (fam, paths) = certificate_paths(&q, &t, v, CertificateKind::Ray, 12, &mut rng).unwrap();
        assert_eq!(fam, PathFamily::Boundary(v));
        for path in &paths {
            assert_eq!(path[0], v);
            assert!(t.is_outer(*path.last().unwrap()));
        }
    }
}

#[test]
fn averaged_certificates_bound_vel() {
    // For any probability measure on the family, VEL <= sum_u P(u in path)^2.
    let t = wheel(6);
    let r = t.root();
    let p = pack_in_disk(&t, &PackOptions::default()).unwrap();
    let q = normalize_root(&p, &t, r).unwrap();
    let mut rng = rng_from_seed(3);
    let (fam, paths) = certificate_paths(&q, &t, r, CertificateKind::Ray, 600, &mut rng).unwrap();
    let mut hits = vec![0.0; t.num_vertices()];
    for path in &paths {
        let mut vs = path.clone();
        vs.sort_unstable();
        vs.dedup();
        for v in vs {
            hits[v] += 1.0 / paths.len() as f64;
        }
    }
    let bound: f64 = hits.iter().map(|h| h * h).sum();
    let ex = vel_exact(&t, fam, &VelOptions::default()).unwrap();
    assert!(ex.value <= bound + 1e-9);
}
