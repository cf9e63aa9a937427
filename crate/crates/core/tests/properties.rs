use proptest::prelude::*;

use asdim::cover::{cover_to_partition, verify_cover, weak_diameter_coloring, Cover};
use asdim::generators::{gen_grid, gen_interval_graph, gen_separated_points, gen_tree};
use asdim::geometric::geometric_cover;
use asdim::graph::{VertexSet, WeightedGraph};
use asdim::metric::{r_components, DistanceOracle};
use asdim::pathwidth::pw_cover;
use asdim::pipelines::{chordal_scheme, planar_cover};
use asdim::stitch::LineCover;
use asdim::{annulus_cover, r_multiplicity};

fn weighted_graph() -> impl Strategy<Value = WeightedGraph> {
    (1usize..14).prop_flat_map(|n| {
        let edge = (0..n, 0..n, prop::sample::select(vec![0.5, 1.0, 1.5, 2.0]));
        prop::collection::vec(edge, 0..3 * n).prop_map(move |es| {
            let mut g = WeightedGraph::empty(n);
            for (u, v, w) in es {
                if u != v {
                    g.add_edge(u, v, w).unwrap();
                }
            }
            g
        })
    })
}

/// A connected spanning subgraph of a grid: a planar input for the pipeline.
fn grid_subgraph() -> impl Strategy<Value = WeightedGraph> {
    (2usize..8, 2usize..8, any::<u64>()).prop_map(|(w, h, mask)| {
        let (g, _) = gen_grid(&[w, h]).unwrap();
        let mut keep = WeightedGraph::empty(g.vertex_count());
        for (i, e) in g.edges().iter().enumerate() {
            // keep the first row and every column so the result is connected
            let spine = e.u < w && e.v < w || (e.v == e.u + w);
            if spine || mask >> (i % 64) & 1 == 1 {
                keep.add_edge(e.u, e.v, 1.0).unwrap();
            }
        }
        keep
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn text_and_json_round_trip(g in weighted_graph()) {
        let t = g.to_text();
        prop_assert_eq!(WeightedGraph::parse(&t).unwrap().to_text(), t.clone());
        prop_assert_eq!(WeightedGraph::parse(&g.to_json()).unwrap().to_text(), t);
    }

    #[test]
    fn r_components_partition_and_refine(g in weighted_graph(), bits in any::<u16>(), r in 0.5f64..3.0) {
        let oracle = DistanceOracle::new(&g);
        let s: VertexSet = (0..g.vertex_count()).filter(|v| bits >> v & 1 == 1).collect();
        let small = r_components(&oracle, &s, r).unwrap();
        let big = r_components(&oracle, &s, r + 1.0).unwrap();
        let mut all: Vec<usize> = small.iter().flat_map(|c| c.iter()).collect();
        all.sort_unstable();
        prop_assert_eq!(all, s.as_slice().to_vec());
        // every component at scale r sits inside one at a larger scale
        for c in &small {
            prop_assert!(big.iter().any(|b| c.iter().all(|v| b.contains(v))));
        }
    }

    #[test]
    fn annulus_covers_of_trees_verify(seed in any::<u64>(), n in 1usize..300, r in 1u32..6, m in 2usize..5) {
        let g = gen_tree(seed, n);
        let c = annulus_cover(&g, 0, r as f64, 2.0, 2, m).unwrap();
        let rep = verify_cover(&c, &DistanceOracle::new(&g));
        prop_assert!(rep.pass);
        prop_assert!(rep.min_coverage >= m - 1);
    }

    #[test]
    fn planar_pipeline_on_grid_subgraphs(g in grid_subgraph(), r in 1u32..5) {
        let oracle = DistanceOracle::new(&g);
        let c = planar_cover(&g, r as f64).unwrap();
        prop_assert_eq!(c.len(), 3);
        let rep = verify_cover(&c, &oracle);
        prop_assert!(rep.pass, "{:?}", rep);
        let (colours, worst) = weak_diameter_coloring(&c, &oracle).unwrap();
        prop_assert!(colours.iter().all(|&x| x < 3));
        prop_assert!(worst <= c.certificate.claimed_bound);
    }

    #[test]
    fn partitions_keep_coverage_one(seed in any::<u64>(), n in 1usize..120) {
        let g = gen_tree(seed, n);
        let c = annulus_cover(&g, 0, 2.0, 2.0, 2, 3).unwrap();
        let part = cover_to_partition(&c).unwrap();
        let counts = part.coverage_counts();
        prop_assert!(counts.iter().all(|&k| k == 1));
        for (p, s) in part.sets.iter().zip(&c.sets) {
            prop_assert!(p.iter().all(|v| s.contains(v)));
        }
        let json = c.to_json();
        prop_assert_eq!(Cover::from_json(&json).unwrap(), c);
    }

    #[test]
    fn line_cover_counts(k in 2usize..8, s in 0.1f64..5.0, x in -1e5f64..1e5) {
        let lc = LineCover::new(k, s).unwrap();
        prop_assert_eq!(lc.classes_of(x).count(), k - 1);
        for i in lc.classes_of(x) {
            let (lo, hi) = lc.run(i, x).unwrap();
            prop_assert!(lo <= x + 1e-9 && x < hi + 1e-9);
            prop_assert!((hi - lo - (k - 1) as f64 * s).abs() < 1e-6);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn sparse_partitions_have_multiplicity_two(seed in any::<u64>(), n in 5usize..250, k in 1usize..4, r in 1u32..4) {
        let (g, pd) = gen_interval_graph(seed, n, k).unwrap();
        let oracle = DistanceOracle::new(&g);
        for c in [chordal_scheme(&g, r as f64).unwrap(), pw_cover(&g, &pd, r as f64).unwrap()] {
            prop_assert!(verify_cover(&c, &oracle).pass);
            prop_assert!(r_multiplicity(&c, &oracle, r as f64) <= 2);
        }
    }

    #[test]
    fn geometric_covers_verify(seed in any::<u64>(), d in 1usize..4, n in 1usize..120) {
        let (g, emb) = gen_separated_points(seed, n, d, 8.0, 2.0).unwrap();
        let c = geometric_cover(&g, &emb, 1.5).unwrap();
        prop_assert_eq!(c.len(), d + 1);
        prop_assert!(verify_cover(&c, &DistanceOracle::new(&g)).pass);
    }
}
