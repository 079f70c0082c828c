//! Property-based invariants across the core modules.

use proptest::prelude::*;

use oramsey_core::digraph::{
    infer_graded_partition, make_grid, make_hypercube, make_random_graded,
};
use oramsey_core::median::{local_median_order, verify_median_property};
use oramsey_core::tournament::{BlowupSpec, InnerFill, Tournament};

/// Every generated graded digraph has every edge crossing exactly one layer
/// boundary forward, checkable by direct scan.
fn edges_cross_one_layer(g: &oramsey_core::GradedDigraph) -> bool {
    g.base()
        .edges()
        .iter()
        .all(|&(u, v)| g.layer_of(v) == g.layer_of(u) + 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn grids_are_graded(d in 1u32..=3, k in 1u32..=4) {
        let g = make_grid(d, k).unwrap();
        prop_assert!(edges_cross_one_layer(&g));
        let expected_edges = (d as u64) * (k as u64).pow(d - 1) * (k as u64 - 1);
        prop_assert_eq!(g.base().edge_count() as u64, expected_edges);
    }

    #[test]
    fn hypercubes_are_graded(d in 0u32..=7) {
        let g = make_hypercube(d).unwrap();
        prop_assert!(edges_cross_one_layer(&g));
        if d >= 1 {
            prop_assert_eq!(g.base().edge_count() as u64, (d as u64) << (d - 1));
        }
    }

    #[test]
    fn random_graded_is_graded(h in 1usize..=6, w in 1u32..=5, seed in any::<u64>()) {
        let g = make_random_graded(h, w, 2, 2, seed);
        prop_assert!(edges_cross_one_layer(&g));
    }

    /// Inference reproduces generator layerings exactly.
    #[test]
    fn inference_round_trips_generators(d in 1u32..=3, k in 2u32..=4) {
        let g = make_grid(d, k).unwrap();
        let inferred = infer_graded_partition(g.base()).unwrap();
        prop_assert_eq!(inferred.layers(), g.layers());
    }

    /// Tournament completeness: the direction-query total over all ordered
    /// pairs equals N(N-1)/2.
    #[test]
    fn tournament_completeness(n in 1u32..=40, seed in any::<u64>()) {
        let t = Tournament::random(n, seed);
        let mut total = 0u64;
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    prop_assert!(t.has_edge(u, v) ^ t.has_edge(v, u));
                    total += u64::from(t.has_edge(u, v));
                }
            }
        }
        prop_assert_eq!(total, (n as u64) * (n as u64 - 1) / 2);
    }

    /// Blow-up invariant: all cross pairs follow the outer tournament.
    #[test]
    fn blowup_cross_parts_follow_outer(
        outer_n in 2u32..=5,
        sizes_seed in any::<u64>(),
        seed in any::<u64>(),
    ) {
        let outer = Tournament::random(outer_n, sizes_seed);
        let part_sizes: Vec<u32> = (0..outer_n).map(|i| 1 + (sizes_seed >> i) as u32 % 3).collect();
        let spec = BlowupSpec { outer: outer.clone(), part_sizes: part_sizes.clone(), inner_fill: InnerFill::Random };
        let t = spec.blowup(seed).unwrap();
        let ranges = spec.part_ranges();
        for i in 0..outer_n as usize {
            for j in 0..outer_n as usize {
                if i == j { continue; }
                let dir = outer.has_edge(i as u32, j as u32);
                for u in ranges[i].0..ranges[i].1 {
                    for v in ranges[j].0..ranges[j].1 {
                        prop_assert_eq!(t.has_edge(u, v), dir);
                    }
                }
            }
        }
    }

    /// Relocation-local optimality implies the median property.
    #[test]
    fn local_order_satisfies_median_property(n in 1u32..=30, seed in any::<u64>()) {
        let t = Tournament::random(n, seed);
        let o = local_median_order(&t, seed ^ 0x9e37_79b9);
        prop_assert!(verify_median_property(&t, &o).is_ok());
    }
}
