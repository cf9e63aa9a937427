//! Seeded instance generators. Every random choice comes from a
//! `ChaCha8Rng` seeded by the caller.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Result};
use crate::geometric::{Embedding, EmbeddingMode};
use crate::graph::{VertexSet, WeightedGraph};
use crate::pathwidth::{normalize_pd, PathDecomposition};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Mixed-radix vertex numbering: the first coordinate varies fastest.
fn grid_index(coord: &[usize], dims: &[usize]) -> usize {
    coord.iter().zip(dims).rev().fold(0, |acc, (&x, &d)| acc * d + x)
}

fn grid_coords(mut v: usize, dims: &[usize]) -> Vec<usize> {
    dims.iter()
        .map(|&d| {
            let x = v % d;
            v /= d;
            x
        })
        .collect()
}

/// Unit-weight grid `[d_1] x ... x [d_k]` and its integer coordinates.
pub fn gen_grid(dims: &[usize]) -> Result<(WeightedGraph, Vec<Vec<f64>>)> {
    grid_impl(dims, false)
}

/// Grid with wrap-around edges along every axis of length at least 3.
pub fn gen_torus_grid(dims: &[usize]) -> Result<WeightedGraph> {
    grid_impl(dims, true).map(|(g, _)| g)
}

fn grid_impl(dims: &[usize], wrap: bool) -> Result<(WeightedGraph, Vec<Vec<f64>>)> {
    if dims.is_empty() || dims.contains(&0) {
        return invalid("grid dimensions must be nonempty and positive");
    }
    let n: usize = dims.iter().product();
    let mut g = WeightedGraph::empty(n);
    let mut coords = Vec::with_capacity(n);
    for v in 0..n {
        let c = grid_coords(v, dims);
        for (axis, &d) in dims.iter().enumerate() {
            let mut next = c.clone();
            if c[axis] + 1 < d {
                next[axis] += 1;
            } else if wrap && d >= 3 {
                next[axis] = 0;
            } else {
                continue;
            }
            g.add_edge(v, grid_index(&next, dims), 1.0)?;
        }
        coords.push(c.into_iter().map(|x| x as f64).collect());
    }
    Ok((g, coords))
}

pub fn gen_path(n: usize) -> WeightedGraph {
    WeightedGraph::unweighted(n, (1..n).map(|i| (i - 1, i))).expect("path edges")
}

pub fn gen_cycle(n: usize) -> WeightedGraph {
    if n < 3 {
        return gen_path(n);
    }
    WeightedGraph::unweighted(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle edges")
}

/// Random recursive tree: vertex `v` attaches to a uniform earlier vertex.
pub fn gen_tree(seed: u64, n: usize) -> WeightedGraph {
    let mut rng = rng(seed);
    WeightedGraph::unweighted(n, (1..n).map(|v| (rng.gen_range(0..v), v))).expect("tree edges")
}

/// Random connected interval graph with clique number at most `k + 1`, and
/// its normalized path decomposition of width at most `k`.
///
/// Intervals are opened and closed by a random sweep that keeps between one
/// and `k + 1` intervals open until all `n` have been opened; the bags are
/// the open sets right after each opening.
pub fn gen_interval_graph(seed: u64, n: usize, k: usize) -> Result<(WeightedGraph, PathDecomposition)> {
    if n == 0 || k == 0 {
        return invalid("interval graphs need n >= 1 and k >= 1");
    }
    let mut rng = rng(seed);
    let mut g = WeightedGraph::empty(n);
    let mut active: Vec<usize> = Vec::new();
    let mut bags = Vec::new();
    let mut created = 0;
    while created < n {
        let can_open = active.len() < k + 1;
        let can_close = active.len() > 1;
        if can_open && (!can_close || rng.gen_bool(0.5)) {
            let v = created;
            created += 1;
            for &u in &active {
                g.add_edge(u, v, 1.0)?;
            }
            active.push(v);
            bags.push(VertexSet::from(active.clone()));
        } else {
            let i = rng.gen_range(0..active.len());
            active.swap_remove(i);
        }
    }
    let pd = normalize_pd(&g, bags)?;
    Ok((g, pd))
}

/// Parameters of the `(k, p)`-stretch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StretchParams {
    pub k: usize,
    pub p: usize,
}

/// Replaces every vertex `v` by a balanced binary tree with `deg(v)` leaves
/// whose edges are subdivided `p` times, and every edge by a path through
/// `k` new vertices joining leaves of the two trees. Vertex `v` of `g` keeps
/// id `v` as the root of its tree.
pub fn stretch(g: &WeightedGraph, params: StretchParams) -> WeightedGraph {
    let n = g.vertex_count();
    let mut h = WeightedGraph::empty(n);
    let mut leaves: Vec<Vec<usize>> = Vec::with_capacity(n);
    for v in 0..n {
        let mut out = Vec::new();
        grow_tree(&mut h, v, g.degree(v).max(1), params.p, &mut out);
        leaves.push(out);
    }
    let mut next_leaf = vec![0usize; n];
    for e in g.edges() {
        let a = leaves[e.u][next_leaf[e.u]];
        next_leaf[e.u] += 1;
        let b = leaves[e.v][next_leaf[e.v]];
        next_leaf[e.v] += 1;
        subdivided_edge(&mut h, a, b, params.k);
    }
    h
}

fn grow_tree(h: &mut WeightedGraph, node: usize, leaf_count: usize, p: usize, out: &mut Vec<usize>) {
    if leaf_count == 1 {
        out.push(node);
        return;
    }
    for part in [leaf_count.div_ceil(2), leaf_count / 2] {
        let child = h.add_vertex();
        subdivided_edge(h, node, child, p);
        grow_tree(h, child, part, p, out);
    }
}

fn subdivided_edge(h: &mut WeightedGraph, a: usize, b: usize, k: usize) {
    let mut prev = a;
    for _ in 0..k {
        let x = h.add_vertex();
        h.add_edge(prev, x, 1.0).expect("fresh vertex");
        prev = x;
    }
    h.add_edge(prev, b, 1.0).expect("distinct endpoints");
}

/// `n` uniform points in `[0, side]^d`.
pub fn gen_unit_ball_points(seed: u64, n: usize, side: f64, d: usize) -> Vec<Vec<f64>> {
    let mut rng = rng(seed);
    (0..n).map(|_| (0..d).map(|_| rng.gen_range(0.0..=side)).collect()).collect()
}

/// Up to `n` points in `[0, side]^d` pairwise at least 1 apart (rejection
/// sampling), joined when at most `stretch` apart.
pub fn gen_separated_points(
    seed: u64,
    n: usize,
    d: usize,
    side: f64,
    stretch: f64,
) -> Result<(WeightedGraph, Embedding)> {
    let mut rng = rng(seed);
    let mut pts: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut misses = 0;
    while pts.len() < n && misses < 200 * n.max(1) {
        let p: Vec<f64> = (0..d).map(|_| rng.gen_range(0.0..=side)).collect();
        if pts.iter().all(|q| dist(q, &p) >= 1.0) {
            pts.push(p);
        } else {
            misses += 1;
        }
    }
    let mut g = WeightedGraph::empty(pts.len());
    for u in 0..pts.len() {
        for v in u + 1..pts.len() {
            if dist(&pts[u], &pts[v]) <= stretch {
                g.add_edge(u, v, 1.0)?;
            }
        }
    }
    let emb = Embedding::new(EmbeddingMode::Separation, d, stretch, pts)?;
    Ok((g, emb))
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometric::validate_embedding;
    use crate::metric::{shortest_paths, DistanceOracle};
    use crate::metric::weak_diameter;

    #[test]
    fn grids() {
        let (g, c) = gen_grid(&[1]).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 0));
        assert_eq!(c, vec![vec![0.0]]);
        let (g, _) = gen_grid(&[3, 3]).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (9, 12));
        let (g, _) = gen_grid(&[2, 2, 2]).unwrap();
        assert_eq!(g.edge_count(), 12);
        let o = DistanceOracle::new(&g);
        assert_eq!(weak_diameter(&o, &g.all_vertices()).unwrap(), 3.0);
        assert!(gen_grid(&[]).is_err());
    }

    #[test]
    fn torus() {
        let g = gen_torus_grid(&[6, 6]).unwrap();
        assert_eq!(g.edge_count(), 72);
        assert!((0..36).all(|v| g.degree(v) == 4));
        assert_eq!(gen_torus_grid(&[2, 5]).unwrap().edge_count(), 5 + 10);
    }

    #[test]
    fn cycles_paths_trees() {
        assert_eq!(gen_cycle(5).edge_count(), 5);
        assert_eq!(gen_path(4).edge_count(), 3);
        let t = gen_tree(3, 50);
        assert_eq!(t.edge_count(), 49);
        assert!(t.is_connected());
        assert_eq!(gen_tree(3, 50).to_text(), t.to_text());
    }

    #[test]
    fn interval_graphs() {
        let (g, pd) = gen_interval_graph(0, 1, 2).unwrap();
        assert_eq!((g.vertex_count(), pd.len()), (1, 1));
        for seed in 0..10 {
            let (g, pd) = gen_interval_graph(seed, 200, 3).unwrap();
            assert!(pd.validate(&g).is_ok());
            assert!(pd.width() <= 3);
            assert!(g.is_connected());
        }
    }

    #[test]
    fn stretch_counts() {
        let p2 = gen_path(2);
        let h = stretch(&p2, StretchParams { k: 5, p: 1 });
        assert_eq!((h.vertex_count(), h.edge_count()), (7, 6));
        assert_eq!(shortest_paths(&h, 0).unwrap()[1], 6.0);

        // K_4 is 3-regular: each tree has 3 leaves (5 nodes, 4 edges).
        let k4 = WeightedGraph::unweighted(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let h = stretch(&k4, StretchParams { k: 0, p: 0 });
        assert_eq!(h.vertex_count(), 4 * 5);
        assert_eq!(h.edge_count(), 4 * 4 + 6);
    }

    #[test]
    fn points() {
        let pts = gen_unit_ball_points(1, 20, 5.0, 3);
        assert_eq!(pts.len(), 20);
        assert!(pts.iter().flatten().all(|&x| (0.0..=5.0).contains(&x)));
        let (g, emb) = gen_separated_points(2, 100, 2, 12.0, 2.0).unwrap();
        assert!(validate_embedding(&emb, &g).is_valid());
        assert_eq!(emb.len(), 100);
    }
}
