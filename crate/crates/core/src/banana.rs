//! Annulus covers around a root, and a small exhaustive search for fat
//! bananas used to sanity-check the hypothesis behind them.

use std::collections::BTreeMap;

use crate::cover::{Certificate, Cover};
use crate::error::{invalid, Error, Result};
use crate::graph::{VertexSet, WeightedGraph, EPS};
use crate::metric::{shortest_paths, DistanceOracle};

/// Vertices grouped by `floor(d(root, u) / r)`, with everything below `k0`
/// lumped into the core.
#[derive(Clone, Debug, PartialEq)]
pub struct AnnulusDecomposition {
    pub root: usize,
    pub width_r: f64,
    pub k0: usize,
    pub core: VertexSet,
    pub annuli: BTreeMap<usize, VertexSet>,
}

impl AnnulusDecomposition {
    /// `k0` is the least integer with `k0 * r >= r + q`, pushed up to the
    /// residue `m - 1` modulo `m`.
    pub fn new(g: &WeightedGraph, root: usize, r: f64, q: f64, m: usize) -> Result<Self> {
        if !(r > 0.0) || !(q > 0.0) {
            return invalid(format!("annulus widths must be positive (r = {r}, q = {q})"));
        }
        if m < 2 {
            return invalid("modulus must be at least 2");
        }
        let dist = shortest_paths(g, root)?;
        if let Some(v) = dist.iter().position(|d| d.is_infinite()) {
            return Err(Error::Disconnected(v));
        }
        let k0 = start_index(r, q, m);
        let mut core = Vec::new();
        let mut annuli: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (u, &d) in dist.iter().enumerate() {
            let k = annulus_index(d, r);
            if k < k0 {
                core.push(u);
            } else {
                annuli.entry(k).or_default().push(u);
            }
        }
        Ok(Self {
            root,
            width_r: r,
            k0,
            core: core.into(),
            annuli: annuli.into_iter().map(|(k, v)| (k, v.into())).collect(),
        })
    }

    /// Index of the class a vertex at this distance falls in; the core acts
    /// as annulus `k0 - 1`.
    pub fn class_of(&self, d: f64) -> usize {
        annulus_index(d, self.width_r).max(self.k0 - 1)
    }
}

fn annulus_index(d: f64, r: f64) -> usize {
    (d / r + EPS).floor() as usize
}

fn start_index(r: f64, q: f64, m: usize) -> usize {
    let mut k0 = (((r + q) / r) - EPS).ceil().max(1.0) as usize;
    while k0 % m != m - 1 {
        k0 += 1;
    }
    k0
}

/// Bound on the r-components of the annulus cover.
///
/// For `m = 2` this is `(5r + 3q)p`. For larger moduli a component lives in
/// the core or in one block of `m - 1` consecutive annuli, and the same
/// chaining argument with blocks of width `(m - 1)r` gives
/// `p(3r + 2(m-1)r + 3q) + 2 k0 r + 2r`.
pub fn annulus_bound(r: f64, q: f64, p: usize, m: usize) -> f64 {
    let p = p as f64;
    if m == 2 {
        (5.0 * r + 3.0 * q) * p
    } else {
        let k0 = start_index(r, q, m) as f64;
        p * (3.0 * r + 2.0 * (m - 1) as f64 * r + 3.0 * q) + 2.0 * k0 * r + 2.0 * r
    }
}

/// The annulus cover of a connected graph by `m` sets.
///
/// With `m = 2` the sets are the core plus even annuli and the odd annuli.
/// With `m >= 3`, set `i` takes every annulus whose index is not `i` modulo
/// `m`, plus the core unless `i == (k0 - 1) mod m`; every vertex is then in
/// `m - 1` sets.
pub fn annulus_cover(g: &WeightedGraph, root: usize, r: f64, q: f64, p: usize, m: usize) -> Result<Cover> {
    if p < 1 {
        return invalid("banana size p must be positive");
    }
    let dec = AnnulusDecomposition::new(g, root, r, q, m)?;
    let sets = sets_from_decomposition(&dec, m);
    Cover::new(g.vertex_count(), sets, certificate(r, q, p, m, dec.k0))
}

fn sets_from_decomposition(dec: &AnnulusDecomposition, m: usize) -> Vec<VertexSet> {
    let mut sets = vec![Vec::new(); m];
    if m == 2 {
        sets[0].extend(dec.core.iter());
        for (&k, a) in &dec.annuli {
            sets[k % 2].extend(a.iter());
        }
    } else {
        let skip = (dec.k0 - 1) % m;
        for (i, s) in sets.iter_mut().enumerate() {
            if i != skip {
                s.extend(dec.core.iter());
            }
            for (&k, a) in &dec.annuli {
                if k % m != i {
                    s.extend(a.iter());
                }
            }
        }
    }
    sets.into_iter().map(VertexSet::from).collect()
}

fn certificate(r: f64, q: f64, p: usize, m: usize, k0: usize) -> Certificate {
    let coverage = if m == 2 { 1 } else { m - 1 };
    let mut cert = Certificate::new("annulus", r, annulus_bound(r, q, p, m), coverage)
        .with_param("q", q)
        .with_param("p", p as f64)
        .with_param("m", m as f64)
        .with_param("k0", k0 as f64);
    if m > 2 {
        cert.notes.push("derived_bound".into());
    }
    cert
}

/// Runs [`annulus_cover`] on every connected component (rooted at its lowest
/// vertex) and unions the i-th sets.
pub fn annulus_cover_components(g: &WeightedGraph, r: f64, q: f64, p: usize, m: usize) -> Result<Cover> {
    let mut sets: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut k0 = start_index(r, q, m.max(2));
    for comp in g.connected_components() {
        let (h, to_parent) = g.induced_subgraph(&VertexSet::from_sorted_unchecked(comp));
        let c = annulus_cover(&h, 0, r, q, p, m)?;
        k0 = c.certificate.param("k0").map(|x| x as usize).unwrap_or(k0);
        for (acc, s) in sets.iter_mut().zip(&c.sets) {
            acc.extend(s.iter().map(|v| to_parent[v]));
        }
    }
    let sets = sets.into_iter().map(VertexSet::from).collect();
    Cover::new(g.vertex_count(), sets, certificate(r, q, p, m, k0))
}

/// `p` geodesics between two connected sets that stay `q` apart.
#[derive(Clone, Debug, PartialEq)]
pub struct BananaWitness {
    pub set_a: VertexSet,
    pub set_b: VertexSet,
    pub paths: Vec<Vec<usize>>,
    pub q: f64,
    pub p: usize,
}

impl BananaWitness {
    /// Checks every defining property against exact distances.
    pub fn validate(&self, oracle: &DistanceOracle<'_>) -> std::result::Result<(), String> {
        let g = oracle.graph();
        for (name, s) in [("A", &self.set_a), ("B", &self.set_b)] {
            if s.is_empty() || !induced_connected(g, s) {
                return Err(format!("{name} is not a nonempty connected set"));
            }
        }
        if oracle.set_distance(&self.set_a, &self.set_b) < self.q - EPS {
            return Err("A and B are closer than q".into());
        }
        if self.paths.len() != self.p {
            return Err(format!("expected {} paths, found {}", self.p, self.paths.len()));
        }
        for path in &self.paths {
            let (first, last) = match (path.first(), path.last()) {
                (Some(&a), Some(&b)) => (a, b),
                _ => return Err("empty path".into()),
            };
            if !self.set_a.contains(first) || !self.set_b.contains(last) {
                return Err("path does not run from A to B".into());
            }
            let mut len = 0.0;
            for w in path.windows(2) {
                let e = g
                    .neighbors(w[0])
                    .iter()
                    .filter(|&&(x, _)| x == w[1])
                    .map(|&(_, wt)| wt)
                    .fold(f64::INFINITY, f64::min);
                if e.is_infinite() {
                    return Err(format!("{} and {} are not adjacent", w[0], w[1]));
                }
                len += e;
            }
            if (len - oracle.distance(first, last)).abs() > EPS * len.max(1.0) {
                return Err("path is not a geodesic".into());
            }
        }
        for (i, a) in self.paths.iter().enumerate() {
            for b in &self.paths[i + 1..] {
                if !fat(oracle, a, b, self.q) {
                    return Err("two paths come within q of each other".into());
                }
            }
        }
        Ok(())
    }
}

fn fat(oracle: &DistanceOracle<'_>, a: &[usize], b: &[usize], q: f64) -> bool {
    a.iter().all(|&x| b.iter().all(|&y| oracle.distance(x, y) >= q - EPS))
}

fn induced_connected(g: &WeightedGraph, s: &VertexSet) -> bool {
    let Some(start) = s.iter().next() else { return true };
    let mut seen = vec![start];
    let mut head = 0;
    while head < seen.len() {
        let u = seen[head];
        head += 1;
        for &(w, _) in g.neighbors(u) {
            if s.contains(w) && !seen.contains(&w) {
                seen.push(w);
            }
        }
    }
    seen.len() == s.len()
}

pub const DEFAULT_BANANA_CAP: usize = 12;
const MAX_END_SIZE: usize = 3;
const MAX_GEODESICS_PER_PAIR: usize = 64;

/// Exhaustive search for a `q`-fat `p`-banana whose ends have at most three
/// vertices. Finding nothing is not a proof that none exists with larger ends.
pub fn detect_fat_banana(g: &WeightedGraph, q: f64, p: usize, size_cap: usize) -> Result<Option<BananaWitness>> {
    let n = g.vertex_count();
    if n > size_cap {
        return Err(Error::SizeCap { size: n, cap: size_cap });
    }
    if p == 0 {
        return invalid("banana size p must be positive");
    }
    let oracle = DistanceOracle::new(g);
    oracle.precompute();
    let ends = connected_subsets(g, MAX_END_SIZE);

    for (i, a) in ends.iter().enumerate() {
        for b in &ends[i + 1..] {
            if oracle.set_distance(a, b) < q - EPS {
                continue;
            }
            let mut candidates = Vec::new();
            for x in a.iter() {
                for y in b.iter() {
                    candidates.extend(geodesics(&oracle, x, y, MAX_GEODESICS_PER_PAIR));
                }
            }
            let mut chosen = Vec::new();
            if pick_fat(&oracle, &candidates, 0, p, q, &mut chosen) {
                let w = BananaWitness {
                    set_a: a.clone(),
                    set_b: b.clone(),
                    paths: chosen.iter().map(|&k| candidates[k].clone()).collect(),
                    q,
                    p,
                };
                debug_assert!(w.validate(&oracle).is_ok());
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

fn pick_fat(
    oracle: &DistanceOracle<'_>,
    cands: &[Vec<usize>],
    from: usize,
    p: usize,
    q: f64,
    chosen: &mut Vec<usize>,
) -> bool {
    if chosen.len() == p {
        return true;
    }
    for k in from..cands.len() {
        if chosen.iter().all(|&j| fat(oracle, &cands[j], &cands[k], q)) {
            chosen.push(k);
            if pick_fat(oracle, cands, k + 1, p, q, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// All shortest paths from `x` to `y`, up to `limit` of them.
fn geodesics(oracle: &DistanceOracle<'_>, x: usize, y: usize, limit: usize) -> Vec<Vec<usize>> {
    let g = oracle.graph();
    let total = oracle.distance(x, y);
    let mut out = Vec::new();
    if total.is_infinite() {
        return out;
    }
    let mut path = vec![x];
    fn walk(
        g: &WeightedGraph,
        oracle: &DistanceOracle<'_>,
        y: usize,
        total: f64,
        done: f64,
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        let u = *path.last().unwrap();
        if u == y {
            out.push(path.clone());
            return;
        }
        for &(w, wt) in g.neighbors(u) {
            let next = done + wt;
            if (next + oracle.distance(w, y) - total).abs() <= EPS * total.max(1.0) && !path.contains(&w) {
                path.push(w);
                walk(g, oracle, y, total, next, path, out, limit);
                path.pop();
            }
        }
    }
    walk(g, oracle, y, total, 0.0, &mut path, &mut out, limit);
    out
}

/// Connected vertex subsets with at most `max` members.
fn connected_subsets(g: &WeightedGraph, max: usize) -> Vec<VertexSet> {
    let mut found: std::collections::BTreeSet<Vec<usize>> = Default::default();
    let mut frontier: Vec<Vec<usize>> = (0..g.vertex_count()).map(|v| vec![v]).collect();
    while let Some(s) = frontier.pop() {
        if !found.insert(s.clone()) || s.len() == max {
            continue;
        }
        for &u in &s {
            for &(w, _) in g.neighbors(u) {
                if !s.contains(&w) {
                    let mut t = s.clone();
                    t.push(w);
                    t.sort_unstable();
                    if !found.contains(&t) {
                        frontier.push(t);
                    }
                }
            }
        }
    }
    let mut all: Vec<Vec<usize>> = found.into_iter().collect();
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    all.into_iter().map(VertexSet::from_sorted_unchecked).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::verify_cover;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn path(n: usize) -> WeightedGraph {
        WeightedGraph::unweighted(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn cycle(n: usize) -> WeightedGraph {
        WeightedGraph::unweighted(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn random_tree(seed: u64, n: usize) -> WeightedGraph {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        WeightedGraph::unweighted(n, (1..n).map(|v| (rng.gen_range(0..v), v))).unwrap()
    }

    #[test]
    fn k0_rounding() {
        assert_eq!(start_index(1.0, 1.0, 2), 3);
        assert_eq!(start_index(1.0, 2.0, 2), 3);
        assert_eq!(start_index(1.0, 3.0, 2), 5);
        assert_eq!(start_index(1.0, 2.0, 3), 5);
        assert_eq!(start_index(2.0, 1.0, 3), 2);
    }

    #[test]
    fn single_vertex() {
        let g = WeightedGraph::empty(1);
        let c = annulus_cover(&g, 0, 1.0, 1.0, 2, 2).unwrap();
        let nonempty: Vec<_> = c.sets.iter().filter(|s| !s.is_empty()).collect();
        assert_eq!(nonempty, vec![&VertexSet::from([0])]);
    }

    #[test]
    fn p10_annuli() {
        let g = path(10);
        let dec = AnnulusDecomposition::new(&g, 0, 1.0, 1.0, 2).unwrap();
        assert_eq!(dec.k0, 3);
        assert_eq!(dec.core, VertexSet::from([0, 1, 2]));
        let c = annulus_cover(&g, 0, 1.0, 1.0, 2, 2).unwrap();
        assert_eq!(c.sets[0], VertexSet::from([0, 1, 2, 4, 6, 8]));
        assert_eq!(c.sets[1], VertexSet::from([3, 5, 7, 9]));
        let rep = verify_cover(&c, &DistanceOracle::new(&g));
        assert!(rep.pass);
        assert!(rep.max_component_diameter() <= 2.0);
    }

    #[test]
    fn random_trees_meet_the_tree_bound() {
        for seed in 0..20 {
            let g = random_tree(seed, 60);
            let c = annulus_cover(&g, 0, 1.0, 2.0, 2, 2).unwrap();
            assert_eq!(c.certificate.claimed_bound, 22.0);
            let rep = verify_cover(&c, &DistanceOracle::new(&g));
            assert!(rep.pass, "seed {seed}: {rep:?}");
        }
    }

    #[test]
    fn higher_modulus_coverage() {
        for m in 3..6 {
            let g = cycle(40);
            let c = annulus_cover(&g, 0, 1.0, 2.0, 2, m).unwrap();
            assert!(c.coverage_counts().iter().all(|&k| k == m - 1), "m = {m}");
            let rep = verify_cover(&c, &DistanceOracle::new(&g));
            assert!(rep.pass, "m = {m}: {rep:?}");
        }
    }

    #[test]
    fn separation_across_two_annuli() {
        let g = random_tree(7, 80);
        let o = DistanceOracle::new(&g);
        let dec = AnnulusDecomposition::new(&g, 0, 2.0, 1.0, 2).unwrap();
        for (&k, a) in &dec.annuli {
            if let Some(b) = dec.annuli.get(&(k + 2)) {
                assert!(o.set_distance(a, b) > 2.0);
            }
        }
    }

    #[test]
    fn bad_inputs() {
        let g = path(3);
        assert!(annulus_cover(&g, 0, 0.0, 1.0, 2, 2).is_err());
        assert!(annulus_cover(&g, 0, 1.0, -1.0, 2, 2).is_err());
        let split = WeightedGraph::empty(2);
        assert!(matches!(annulus_cover(&split, 0, 1.0, 1.0, 2, 2), Err(Error::Disconnected(1))));
        assert!(annulus_cover_components(&split, 1.0, 1.0, 2, 2).is_ok());
    }

    #[test]
    fn trees_have_no_fat_bananas() {
        for seed in 0..5 {
            let g = random_tree(seed, 12);
            assert!(detect_fat_banana(&g, 2.0, 2, 12).unwrap().is_none());
        }
        assert!(detect_fat_banana(&path(12), 2.0, 2, 12).unwrap().is_none());
    }

    #[test]
    fn cycle_has_a_fat_banana() {
        let g = cycle(12);
        let w = detect_fat_banana(&g, 2.0, 2, 12).unwrap().expect("C_12 has a 2-fat 2-banana");
        w.validate(&DistanceOracle::new(&g)).unwrap();
        assert_eq!(w.paths.len(), 2);
    }

    #[test]
    fn complete_graph_has_none() {
        let g = WeightedGraph::unweighted(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(detect_fat_banana(&g, 2.0, 2, 12).unwrap().is_none());
    }

    #[test]
    fn size_cap() {
        assert!(matches!(detect_fat_banana(&path(13), 2.0, 2, 12), Err(Error::SizeCap { .. })));
    }
}
