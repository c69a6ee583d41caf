use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::planar::{validate_map, Rule};

#[test]
fn visible_pairs_small() {
    // 1 3 2: the middle peak hides nothing, so 0 and 2 see each other.
    assert_eq!(visible_pairs(&[1.0, 3.0, 2.0]).unwrap(), vec![(0, 2)]);
    // Monotone sequences have no long-range pairs.
    assert!(visible_pairs(&[1.0, 2.0, 3.0, 4.0]).unwrap().is_empty());
    assert_eq!(visible_pairs(&[0.0, 5.0, 4.0, 3.0, 1.0]).unwrap(), vec![(0, 2), (0, 3), (0, 4)]);
    assert_eq!(visible_pairs(&[1.0, 2.0, 1.0]), Err(CrtError::DegenerateTrace));
}

fn brute(values: &[f64]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for b in 0..values.len() {
        for a in (0..b.saturating_sub(1)).rev() {
            let between = values[a + 1..b].iter().copied().fold(f64::INFINITY, f64::min);
            if values[a].max(values[b]) <= between {
                out.push((a, b));
            }
        }
    }
    out
}

#[test]
fn visible_pairs_match_quadratic_scan() {
    let mut rng = crate::rng::rng_from_seed(4);
    for _ in 0..50 {
        use rand::Rng as _;
        let values: Vec<f64> = (0..40).map(|_| rng.random::<f64>()).collect();
        let mut fast = visible_pairs(&values).unwrap();
        let mut slow = brute(&values);
        fast.sort_unstable();
        slow.sort_unstable();
        assert_eq!(fast, slow);
    }
}

fn sample(seed: u64, horizon: f64) -> CorrelatedTrace {
    CorrelatedTrace::sample(&TraceParams { oversample: 8, ..TraceParams::new(1.0, 0.01, horizon, seed) }).unwrap()
}

#[test]
fn window_map_is_a_plane_triangulation_with_doubled_edges() {
    let t = sample(1, 1.0);
    let m = MatedCrtMap::build(&t, (-0.5, 0.5)).unwrap();
    assert_eq!(m.num_vertices(), 101);
    assert_eq!(m.time_index(0), -50);
    assert_eq!(m.origin_vertex(), Some(50));
    let report = validate_map(m.map());
    assert!(!report.has(Rule::InnerFaceNotTriangle), "{report}");
    assert!(!report.has(Rule::NotPlanar), "{report}");
    for v in 0..100 {
        assert!(m.map().neighbors(v).any(|w| w == v + 1));
    }
    let spine = (0..m.map().num_edges()).filter(|&e| m.side(e) == EdgeSide::Spine).count();
    assert_eq!(spine, 100);
}

#[test]
fn window_triangulations_validate() {
    for seed in 0..10 {
        let t = sample(seed, 1.0);
        let m = MatedCrtMap::build(&t, (-0.9, 0.9)).unwrap();
        match m.window_triangulation(0.5) {
            Ok(tri) => {
                assert_eq!(tri.label(tri.root()), m.origin_vertex().unwrap() as u32);
                assert!(!tri.is_outer(tri.root()));
            }
            Err(e) => assert_eq!(e, CrtError::WindowTooSmall, "seed {seed}"),
        }
    }
}

#[test]
fn constant_trace_is_degenerate() {
    let t = CorrelatedTrace::from_samples(1.0, 1.0, 2, 10, vec![0.0; 21], vec![0.0; 21]).unwrap();
    assert_eq!(MatedCrtMap::build(&t, (-4.0, 4.0)).unwrap_err(), CrtError::DegenerateTrace);
}

#[test]
fn window_outside_trace_rejected() {
    let t = sample(0, 0.1);
    assert_eq!(MatedCrtMap::build(&t, (-1.0, 1.0)).unwrap_err(), CrtError::WindowOutOfRange);
}

#[test]
fn tiny_inner_fraction_with_root_on_boundary() {
    // Root vertex 0 of a window that starts at time zero lies on the outer face.
    let t = sample(3, 1.0);
    let m = MatedCrtMap::build(&t, (0.0, 0.3)).unwrap();
    assert_eq!(m.origin_vertex(), Some(0));
    assert_eq!(m.window_triangulation(0.01).unwrap_err(), CrtError::WindowTooSmall);
}
