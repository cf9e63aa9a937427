use asdim::generators::{gen_grid, gen_interval_graph, gen_path, gen_separated_points};
use asdim::geometric::{geometric_cover_traced, grid_subgraph_cover, Embedding, EmbeddingMode};
use asdim::graph::VertexSet;
use asdim::metric::DistanceOracle;
use asdim::pathwidth::{normalize_pd, pw_cover_traced, PathDecomposition, PwConstants};
use asdim::{verify_cover, Error};

#[test]
fn decomposition_text_round_trip() {
    let (g, pd) = gen_interval_graph(2, 60, 3).unwrap();
    let back = PathDecomposition::from_text(g.vertex_count(), pd.to_text().as_bytes()).unwrap();
    assert_eq!(back, pd);
    back.validate(&g).unwrap();
}

#[test]
fn broken_decompositions_are_rejected() {
    let g = gen_path(4);
    let gap = PathDecomposition { vertex_count: 4, bags: vec![[0, 1].into(), [1, 2].into(), [0, 3].into()] };
    assert!(matches!(gap.validate(&g), Err(Error::Decomposition(_))));
    let missing_edge = PathDecomposition { vertex_count: 4, bags: vec![[0, 1].into(), [2, 3].into()] };
    assert!(missing_edge.validate(&g).is_err());
    assert!(normalize_pd(&g, vec![VertexSet::from([0, 1])]).is_err());
}

#[test]
fn constants_grow_geometrically() {
    let c = PwConstants::new(2, 3, 1.0);
    assert_eq!(c.small_r.len(), 3);
    assert_eq!(c.small_r[2], 100.0);
    for j in 0..2 {
        assert_eq!(c.small_r[j], 10.0 * c.big_r[j + 1]);
    }
    assert_eq!(c.final_bound(), 4.0 * c.big_r[0]);
}

#[test]
fn pathwidth_trace_is_clean() {
    for seed in 0..5 {
        let (g, pd) = gen_interval_graph(seed, 300, 1 + seed as usize % 3).unwrap();
        let oracle = DistanceOracle::new(&g);
        let (c, trace) = pw_cover_traced(&g, &pd, 1.0).unwrap();
        assert!(trace.check_invariants(&oracle).is_clean());
        assert!(verify_cover(&c, &oracle).pass);
    }
}

#[test]
fn geometric_recursion_ledger() {
    let (g, emb) = gen_separated_points(9, 300, 3, 9.0, 2.0).unwrap();
    let (c, trace) = geometric_cover_traced(&g, &emb, 1.0).unwrap();
    assert_eq!(c.len(), 4);
    let frees: Vec<usize> = trace.levels.iter().map(|l| l.free).collect();
    assert!(frees.contains(&0) && frees.contains(&3));
    assert!(trace.levels.iter().all(|l| l.observed_coverage + l.free >= 4));
}

#[test]
fn embeddings_are_checked() {
    let (g, coords) = gen_grid(&[3, 3]).unwrap();
    // stretch 1 with unit grid spacing is a valid separation embedding
    let ok = Embedding::new(EmbeddingMode::Separation, 2, 1.0, coords.clone()).unwrap();
    assert!(geometric_cover_traced(&g, &ok, 1.0).is_ok());
    let squashed: Vec<Vec<f64>> = coords.iter().map(|p| vec![p[0] * 0.5, p[1]]).collect();
    let bad = Embedding::new(EmbeddingMode::Separation, 2, 1.0, squashed).unwrap();
    assert!(matches!(geometric_cover_traced(&g, &bad, 1.0), Err(Error::Embedding(_))));
    assert!(grid_subgraph_cover(&g, &coords, 2.0).is_ok());
    let text = ok.to_text();
    assert_eq!(Embedding::from_text(text.as_bytes()).unwrap(), ok);
}
