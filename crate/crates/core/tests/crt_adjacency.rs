mod oracles;

use cpvel_core::crt::{correlation, CorrelatedTrace, EdgeSide, MatedCrtMap, Sampler, TraceParams};
use cpvel_core::planar::validate_map;
use cpvel_core::PlanarMap;
use oracles::brute_crt_edges;

fn sweep_edges(m: &MatedCrtMap) -> Vec<(usize, usize, bool)> {
    let map = m.map();
    let mut out: Vec<(usize, usize, bool)> = (0..map.num_edges())
        .filter(|&e| m.side(e) != EdgeSide::Spine)
        .map(|e| {
            let (a, b) = (map.origin(2 * e), map.dest(2 * e));
            (a.min(b), a.max(b), m.side(e) == EdgeSide::Upper)
        })
        .collect();
    out.sort_unstable_by_key(|&(a, b, u)| (u, a, b));
    out
}

fn window_bounds(trace: &CorrelatedTrace, window: (f64, f64)) -> (i64, usize) {
    let eps = trace.epsilon();
    let lo = (window.0 / eps - 1e-9).ceil() as i64;
    let hi = (window.1 / eps + 1e-9).floor() as i64;
    (lo, (hi - lo + 1) as usize)
}

#[test]
fn stack_sweep_equals_brute_force() {
    let gammas = [0.5, 1.0, std::f64::consts::SQRT_2, 1.5, 1.9];
    let mut total_edges = 0;
    for seed in 0..100u64 {
        let gamma = gammas[seed as usize % gammas.len()];
        let oversample = 1 + (seed as usize % 4) * 3;
        let params = TraceParams { oversample, ..TraceParams::new(gamma, 0.01, 1.0, seed) };
        let trace = CorrelatedTrace::sample(&params).unwrap();
        let n_target = 20 + (seed as usize * 37) % 180;
        let half = n_target as f64 * 0.01 / 2.0;
        let window = (-half, half);
        let m = MatedCrtMap::build(&trace, window).unwrap();
        let (lo, n) = window_bounds(&trace, window);
        assert!(n <= 200);
        assert_eq!(m.num_vertices(), n);
        let want = brute_crt_edges(&trace, lo, n);
        assert_eq!(sweep_edges(&m), want, "seed {seed}");
        total_edges += want.len();
    }
    assert!(total_edges > 10_000);
}

fn shifted(trace: &CorrelatedTrace, blocks: usize, offset: f64) -> CorrelatedTrace {
    let k = trace.oversample();
    let l: Vec<f64> = trace.l().iter().map(|x| x + offset).collect();
    let r: Vec<f64> = trace.r().iter().map(|x| x - offset).collect();
    CorrelatedTrace::from_samples(trace.gamma(), trace.epsilon(), k, trace.zero_index() - blocks * k, l, r).unwrap()
}

fn same_map(a: &PlanarMap, b: &PlanarMap) -> bool {
    a.signature() == b.signature()
}

#[test]
fn translation_covariance() {
    for seed in 0..20 {
        let trace =
            CorrelatedTrace::sample(&TraceParams { oversample: 4, ..TraceParams::new(1.0, 0.02, 2.0, seed) }).unwrap();
        let eps = trace.epsilon();
        let window = (-0.6, 0.4);
        let base = MatedCrtMap::build(&trace, window).unwrap();
        for shift in [1usize, 7, 25] {
            let moved = shifted(&trace, shift, 3.25);
            let s = shift as f64 * eps;
            let other = MatedCrtMap::build(&moved, (window.0 + s, window.1 + s)).unwrap();
            assert!(same_map(base.map(), other.map()), "seed {seed} shift {shift}");
        }
    }
}

#[test]
fn maps_are_deterministic_and_plane() {
    for seed in [3u64, 11, 19] {
        let p = TraceParams { oversample: 8, ..TraceParams::new(1.5, 0.005, 1.0, seed) };
        let a = MatedCrtMap::build(&CorrelatedTrace::sample(&p).unwrap(), (-0.9, 0.9)).unwrap();
        let b = MatedCrtMap::build(&CorrelatedTrace::sample(&p).unwrap(), (-0.9, 0.9)).unwrap();
        assert!(same_map(a.map(), b.map()));
        let report = validate_map(a.map());
        assert!(!report.has(cpvel_core::planar::Rule::NotPlanar), "{report}");
        let n = a.num_vertices();
        // Plane graph with a doubled-edge budget: at most 3n - 6 + (n - 1) edges.
        assert!(a.map().num_edges() <= 4 * n);
    }
}

#[test]
fn window_pipeline_yields_valid_triangulations() {
    let mut ok = 0;
    for seed in 0..30u64 {
        let gamma = [0.5, 1.0, 1.5][seed as usize % 3];
        let p = TraceParams { oversample: 8, ..TraceParams::new(gamma, 0.01, 1.0, seed) };
        let m = MatedCrtMap::build(&CorrelatedTrace::sample(&p).unwrap(), (-0.99, 1.0)).unwrap();
        match m.window_triangulation(0.5) {
            Ok(t) => {
                assert!(!t.is_outer(t.root()));
                let report = cpvel_core::planar::validate_triangulation(t.map(), t.label(t.root()));
                assert!(report.ok(), "{report}");
                ok += 1;
            }
            Err(e) => assert_eq!(e, cpvel_core::crt::CrtError::WindowTooSmall),
        }
    }
    assert!(ok >= 10, "{ok}");
}

#[test]
fn increment_correlation_over_a_million_steps() {
    for (i, gamma) in [0.5, 1.0, std::f64::consts::SQRT_2, 1.5].into_iter().enumerate() {
        let p = TraceParams { oversample: 1, ..TraceParams::new(gamma, 1e-6, 0.5, 1000 + i as u64) };
        let t = CorrelatedTrace::sample(&p).unwrap();
        assert!(t.len() > 1_000_000);
        let c = t.increment_correlation();
        assert!((c - correlation(gamma)).abs() <= 0.01, "gamma {gamma}: {c}");
    }
}

#[test]
fn dyadic_sampler_has_the_same_correlation() {
    let p = TraceParams { oversample: 16, sampler: Sampler::Dyadic, ..TraceParams::new(1.0, 1.0 / 65536.0, 1.0, 77) };
    let t = CorrelatedTrace::sample(&p).unwrap();
    assert!((t.increment_correlation() - correlation(1.0)).abs() <= 0.01);
}
