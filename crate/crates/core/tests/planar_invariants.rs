use std::collections::BTreeSet;

use cpvel_core::crt::{CorrelatedTrace, MatedCrtMap, TraceParams};
use cpvel_core::generate::{hex_disk, random_flips, random_insertion, stacked_wheel};
use cpvel_core::planar::{collapse_parallel, validate_triangulation, NeighborEntry};
use cpvel_core::rng::rng_from_seed;
use cpvel_core::{PlanarMap, RootedTriangulation};
use proptest::prelude::*;

fn rebuild_from_signature(map: &PlanarMap) -> PlanarMap {
    let sig = map.signature();
    let index = map.label_index();
    let mut lists: Vec<Vec<NeighborEntry>> = vec![Vec::new(); map.num_vertices()];
    for (label, entries) in &sig.rotations {
        lists[index[label]] = entries.iter().map(|&(l, t)| (index[&l], t)).collect();
    }
    let walk: Vec<NeighborEntry> = sig.outer.iter().map(|&(l, t)| (index[&l], t)).collect();
    PlanarMap::from_neighbor_lists(map.labels().to_vec(), &lists, &walk).unwrap()
}

fn edge_set(t: &RootedTriangulation) -> BTreeSet<(usize, usize)> {
    (0..t.num_vertices()).flat_map(|v| t.neighbors(v).iter().map(move |&w| (v.min(w), v.max(w)))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn insertion_maps_are_valid_disks(n in 1usize..80, seed in any::<u64>()) {
        let t = random_insertion(n, &mut rng_from_seed(seed));
        let map = t.map();
        prop_assert!(validate_triangulation(map, t.label(t.root())).ok());
        let (_, faces) = map.face_indices();
        prop_assert_eq!(map.num_vertices() as i64 - map.num_edges() as i64 + faces as i64, 2);
        prop_assert_eq!(t.faces().len(), 2 * n + 1);
        let degree_sum: usize = (0..t.num_vertices()).map(|v| t.neighbors(v).len()).sum();
        prop_assert_eq!(degree_sum, 2 * map.num_edges());
        prop_assert_eq!(t.outer_cycle().len(), 3);
    }

    #[test]
    fn flips_keep_counts_boundary_and_root(n in 3usize..60, flips in 0usize..200, seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        let t = random_insertion(n, &mut rng);
        let f = random_flips(&t, flips, &mut rng);
        prop_assert_eq!(f.num_vertices(), t.num_vertices());
        prop_assert_eq!(edge_set(&f).len(), edge_set(&t).len());
        prop_assert_eq!(f.root(), t.root());
        prop_assert_eq!(f.outer_cycle().to_vec(), t.outer_cycle().to_vec());
        prop_assert!(validate_triangulation(f.map(), f.label(f.root())).ok());
    }

    #[test]
    fn signature_round_trips(n in 1usize..50, seed in any::<u64>()) {
        let t = random_flips(&random_insertion(n, &mut rng_from_seed(seed)), n, &mut rng_from_seed(seed ^ 1));
        let back = rebuild_from_signature(t.map());
        prop_assert_eq!(back.signature(), t.map().signature());
    }

    #[test]
    fn collapse_is_identity_on_simple_maps(k in 3usize..9, layers in 1usize..4) {
        let t = stacked_wheel(k, layers);
        let c = collapse_parallel(t.map()).unwrap();
        prop_assert_eq!(c.signature(), t.map().signature());
    }

    #[test]
    fn crt_maps_round_trip_and_collapse_idempotently(seed in 0u64..1000, gamma in 0.3f64..1.9) {
        let p = TraceParams { oversample: 4, ..TraceParams::new(gamma, 0.02, 1.0, seed) };
        let m = MatedCrtMap::build(&CorrelatedTrace::sample(&p).unwrap(), (-0.98, 1.0)).unwrap();
        let back = rebuild_from_signature(m.map());
        prop_assert_eq!(back.signature(), m.map().signature());
        let once = collapse_parallel(m.map()).unwrap();
        let twice = collapse_parallel(&once).unwrap();
        prop_assert_eq!(once.signature(), twice.signature());
        prop_assert!(once.num_edges() <= m.map().num_edges());
    }
}

#[test]
fn relabeling_commutes_with_signature() {
    let t = hex_disk(3);
    let shifted = t.map().relabeled(|l| 1000 + 2 * l);
    let sig = shifted.signature();
    let orig = t.map().signature();
    assert_eq!(sig.rotations.len(), orig.rotations.len());
    for ((la, ea), (lb, eb)) in sig.rotations.iter().zip(&orig.rotations) {
        assert_eq!(*la, 1000 + 2 * lb);
        let mapped: Vec<u32> = eb.iter().map(|&(l, _)| 1000 + 2 * l).collect();
        let got: Vec<u32> = ea.iter().map(|&(l, _)| l).collect();
        assert_eq!(got, mapped);
    }
}
