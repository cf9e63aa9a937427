//! Exact shortest-path metric, real projections, and component queries.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::graph::{VertexSet, WeightedGraph, EPS};

/// Above this many vertices the oracle never fills the full distance table
/// eagerly.
pub const DEFAULT_ALL_PAIRS_CAP: usize = 5000;

#[derive(PartialEq)]
struct HeapItem(f64, usize);

impl Eq for HeapItem {}

impl Ord for HeapItem {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then_with(|| other.1.cmp(&self.1))
    }
}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Single-source distances; `f64::INFINITY` for unreachable vertices.
pub fn shortest_paths(g: &WeightedGraph, source: usize) -> Result<Vec<f64>> {
    g.check_vertex(source)?;
    Ok(multi_source_distances(g, &[source], f64::INFINITY))
}

/// Distances from the nearest of `sources`, exploring only up to `limit`.
/// Vertices farther than `limit` are reported as infinite.
pub fn multi_source_distances(g: &WeightedGraph, sources: &[usize], limit: f64) -> Vec<f64> {
    let n = g.vertex_count();
    let mut dist = vec![f64::INFINITY; n];
    if g.is_unit_weight() {
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s] != 0.0 {
                dist[s] = 0.0;
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            let du = dist[u] + 1.0;
            if du > limit + EPS {
                continue;
            }
            for &(v, _) in g.neighbors(u) {
                if dist[v] == f64::INFINITY {
                    dist[v] = du;
                    queue.push_back(v);
                }
            }
        }
        return dist;
    }
    let mut heap = BinaryHeap::new();
    for &s in sources {
        dist[s] = 0.0;
        heap.push(HeapItem(0.0, s));
    }
    while let Some(HeapItem(d, u)) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for &(v, w) in g.neighbors(u) {
            let nd = d + w;
            if nd < dist[v] && nd <= limit + EPS {
                dist[v] = nd;
                heap.push(HeapItem(nd, v));
            }
        }
    }
    dist
}

/// Lazily computed, cached exact distances. Rows are filled on first use and
/// can be read concurrently.
pub struct DistanceOracle<'g> {
    graph: &'g WeightedGraph,
    rows: Vec<OnceLock<Vec<f64>>>,
    all_pairs_cap: usize,
}

impl<'g> DistanceOracle<'g> {
    pub fn new(graph: &'g WeightedGraph) -> Self {
        Self::with_cap(graph, DEFAULT_ALL_PAIRS_CAP)
    }

    pub fn with_cap(graph: &'g WeightedGraph, all_pairs_cap: usize) -> Self {
        Self {
            graph,
            rows: (0..graph.vertex_count()).map(|_| OnceLock::new()).collect(),
            all_pairs_cap,
        }
    }

    pub fn graph(&self) -> &'g WeightedGraph {
        self.graph
    }

    pub fn row(&self, source: usize) -> &[f64] {
        self.rows[source].get_or_init(|| multi_source_distances(self.graph, &[source], f64::INFINITY))
    }

    pub fn distance(&self, u: usize, v: usize) -> f64 {
        self.row(u)[v]
    }

    /// Fills every row in parallel when the graph is under the all-pairs cap.
    /// Returns whether the table was filled.
    pub fn precompute(&self) -> bool {
        if self.graph.vertex_count() > self.all_pairs_cap {
            return false;
        }
        (0..self.graph.vertex_count()).into_par_iter().for_each(|s| {
            self.row(s);
        });
        true
    }

    /// Fills the rows of the given sources in parallel.
    pub fn warm(&self, sources: &[usize]) {
        sources.par_iter().for_each(|&s| {
            self.row(s);
        });
    }

    /// `d(a, b)` for sets: minimum over pairs.
    pub fn set_distance(&self, a: &VertexSet, b: &VertexSet) -> f64 {
        a.iter()
            .map(|u| {
                let row = self.row(u);
                b.iter().map(|v| row[v]).fold(f64::INFINITY, f64::min)
            })
            .fold(f64::INFINITY, f64::min)
    }
}

/// A 1-Lipschitz vertex-to-real map. `NaN` marks vertices outside the domain.
#[derive(Clone, Debug, PartialEq)]
pub struct RealProjection {
    values: Vec<f64>,
}

impl RealProjection {
    pub fn new(values: Vec<f64>) -> Self {
        Self { values }
    }

    pub fn get(&self, v: usize) -> Option<f64> {
        self.values.get(v).copied().filter(|x| !x.is_nan())
    }

    pub fn value(&self, v: usize) -> f64 {
        self.values[v]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// First edge violating `|f(u) - f(v)| <= w(uv)`, if any.
    pub fn lipschitz_violation(&self, g: &WeightedGraph) -> Option<(usize, usize)> {
        g.edges().iter().find_map(|e| match (self.get(e.u), self.get(e.v)) {
            (Some(a), Some(b)) if (a - b).abs() > e.weight + EPS => Some((e.u, e.v)),
            _ => None,
        })
    }

    /// Restriction to the vertices of an induced subgraph.
    pub fn pull_back(&self, to_parent: &[usize]) -> RealProjection {
        RealProjection::new(to_parent.iter().map(|&v| self.values[v]).collect())
    }
}

/// What to do with vertices unreachable from the root.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Unreachable {
    Error,
    /// Leave them outside the projection's domain.
    RestrictToComponent,
}

pub fn rooted_projection(g: &WeightedGraph, root: usize, mode: Unreachable) -> Result<RealProjection> {
    let mut d = shortest_paths(g, root)?;
    if let Some(v) = d.iter().position(|x| x.is_infinite()) {
        match mode {
            Unreachable::Error => return Err(Error::Disconnected(v)),
            Unreachable::RestrictToComponent => {
                for x in d.iter_mut().filter(|x| x.is_infinite()) {
                    *x = f64::NAN;
                }
            }
        }
    }
    Ok(RealProjection::new(d))
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    /// Groups `0..n` by representative, groups ordered by smallest member.
    pub fn groups(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut slot = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            let r = self.find(x);
            if slot[r] == usize::MAX {
                slot[r] = out.len();
                out.push(Vec::new());
            }
            out[slot[r]].push(x);
        }
        out
    }
}

fn chain_components(
    oracle: &DistanceOracle<'_>,
    s: &VertexSet,
    r: f64,
    mut extra: impl FnMut(usize, usize) -> bool,
) -> Vec<VertexSet> {
    let members = s.as_slice();
    let mut uf = UnionFind::new(members.len());
    for (i, &u) in members.iter().enumerate() {
        let row = oracle.row(u);
        for (j, &v) in members.iter().enumerate().skip(i + 1) {
            if row[v] <= r + EPS && extra(u, v) {
                uf.union(i, j);
            }
        }
    }
    uf.groups()
        .into_iter()
        .map(|g| VertexSet::from_sorted_unchecked(g.into_iter().map(|i| members[i]).collect()))
        .collect()
}

/// Partition of `s` into maximal chains with consecutive distances `<= r`.
pub fn r_components(oracle: &DistanceOracle<'_>, s: &VertexSet, r: f64) -> Result<Vec<VertexSet>> {
    if !(r > 0.0) {
        return invalid(format!("scale must be positive, got {r}"));
    }
    Ok(chain_components(oracle, s, r, |_, _| true))
}

/// As [`r_components`], but every step must also move the projection by at
/// most `sp`. Pass `f64::INFINITY` for `sp` to recover plain r-components.
pub fn rs_components(
    oracle: &DistanceOracle<'_>,
    f: &RealProjection,
    s: &VertexSet,
    r: f64,
    sp: f64,
) -> Result<Vec<VertexSet>> {
    if !(r > 0.0) || !(sp > 0.0) {
        return invalid(format!("scales must be positive, got ({r}, {sp})"));
    }
    if let Some(v) = s.iter().find(|&v| f.get(v).is_none()) {
        return invalid(format!("projection undefined at vertex {v}"));
    }
    Ok(chain_components(oracle, s, r, |u, v| {
        (f.value(u) - f.value(v)).abs() <= sp + EPS
    }))
}

/// Largest ambient distance between two members; infinite when `s` spans
/// several connected components.
pub fn weak_diameter(oracle: &DistanceOracle<'_>, s: &VertexSet) -> Result<f64> {
    if s.is_empty() {
        return invalid("weak diameter of an empty set");
    }
    Ok(weak_diameter_or_zero(oracle, s))
}

pub(crate) fn weak_diameter_or_zero(oracle: &DistanceOracle<'_>, s: &VertexSet) -> f64 {
    let members = s.as_slice();
    let mut best = 0.0f64;
    for (i, &u) in members.iter().enumerate() {
        let row = oracle.row(u);
        for &v in &members[i + 1..] {
            best = best.max(row[v]);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> WeightedGraph {
        WeightedGraph::unweighted(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn cycle(n: usize) -> WeightedGraph {
        WeightedGraph::unweighted(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn shortest_path_examples() {
        let k1 = WeightedGraph::empty(1);
        assert_eq!(shortest_paths(&k1, 0).unwrap(), vec![0.0]);
        assert_eq!(shortest_paths(&path(3), 0).unwrap(), vec![0.0, 1.0, 2.0]);
        let tri = WeightedGraph::new(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 3.0)]).unwrap();
        assert_eq!(shortest_paths(&tri, 0).unwrap()[2], 2.0);
        assert!(shortest_paths(&tri, 3).is_err());
        let split = WeightedGraph::new(3, [(0, 1, 1.0)]).unwrap();
        assert!(shortest_paths(&split, 0).unwrap()[2].is_infinite());
    }

    #[test]
    fn rooted_projection_examples() {
        let f = rooted_projection(&path(4), 0, Unreachable::Error).unwrap();
        assert_eq!(f.values(), &[0.0, 1.0, 2.0, 3.0]);
        let f = rooted_projection(&cycle(6), 0, Unreachable::Error).unwrap();
        assert_eq!(f.values(), &[0.0, 1.0, 2.0, 3.0, 2.0, 1.0]);
        assert!(f.lipschitz_violation(&cycle(6)).is_none());
        let split = WeightedGraph::unweighted(3, [(0, 1)]).unwrap();
        assert!(matches!(
            rooted_projection(&split, 0, Unreachable::Error),
            Err(Error::Disconnected(2))
        ));
        let f = rooted_projection(&split, 0, Unreachable::RestrictToComponent).unwrap();
        assert_eq!(f.get(1), Some(1.0));
        assert_eq!(f.get(2), None);
    }

    #[test]
    fn r_component_examples() {
        let g = path(5);
        let o = DistanceOracle::new(&g);
        assert!(r_components(&o, &VertexSet::new(), 1.0).unwrap().is_empty());
        let s = VertexSet::from([0, 2, 4]);
        assert_eq!(r_components(&o, &s, 1.0).unwrap().len(), 3);
        assert_eq!(r_components(&o, &s, 2.0).unwrap(), vec![s.clone()]);
        assert!(r_components(&o, &s, 0.0).is_err());
    }

    #[test]
    fn rs_component_examples() {
        let g = path(5);
        let o = DistanceOracle::new(&g);
        let f = rooted_projection(&g, 0, Unreachable::Error).unwrap();
        let s = VertexSet::from([1, 3]);
        assert_eq!(rs_components(&o, &f, &s, 4.0, 3.0).unwrap().len(), 1);

        // Nine-vertex witness: one 4-component, two (4,3)-components.
        let g = path(9);
        let o = DistanceOracle::new(&g);
        let f = rooted_projection(&g, 0, Unreachable::Error).unwrap();
        let s = VertexSet::from([2, 6]);
        assert_eq!(r_components(&o, &s, 4.0).unwrap().len(), 1);
        assert_eq!(rs_components(&o, &f, &s, 4.0, 3.0).unwrap().len(), 2);
        assert_eq!(
            rs_components(&o, &f, &s, 4.0, f64::INFINITY).unwrap(),
            r_components(&o, &s, 4.0).unwrap()
        );

        let partial = RealProjection::new(vec![0.0, f64::NAN, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0]);
        assert!(rs_components(&o, &partial, &VertexSet::from([1, 2]), 1.0, 1.0).is_err());
    }

    #[test]
    fn weak_diameter_examples() {
        let g = path(5);
        let o = DistanceOracle::new(&g);
        assert_eq!(weak_diameter(&o, &VertexSet::from([3])).unwrap(), 0.0);
        assert_eq!(weak_diameter(&o, &VertexSet::from([0, 4])).unwrap(), 4.0);
        assert!(weak_diameter(&o, &VertexSet::new()).is_err());
        let c = cycle(6);
        let o = DistanceOracle::new(&c);
        assert_eq!(weak_diameter(&o, &VertexSet::from([0, 2, 3])).unwrap(), 3.0);
    }

    #[test]
    fn induced_distances_grow() {
        let c = cycle(6);
        let (h, map) = c.induced_subgraph(&VertexSet::from([1, 2, 3, 4, 5]));
        let oh = DistanceOracle::new(&h);
        let og = DistanceOracle::new(&c);
        let (a, b) = (map.iter().position(|&v| v == 1).unwrap(), map.iter().position(|&v| v == 5).unwrap());
        assert_eq!(oh.distance(a, b), 4.0);
        assert_eq!(og.distance(1, 5), 2.0);
    }

    #[test]
    fn subdivision_preserves_distances() {
        let p3 = path(3);
        let h = p3.subdivide_edge(0, &[0.5, 0.5]).unwrap();
        let h = h.subdivide_edge(0, &[0.5, 0.5]).unwrap();
        assert_eq!(h.vertex_count(), 5);
        let o = DistanceOracle::new(&h);
        assert_eq!(o.distance(0, 2), 2.0);
        assert_eq!(o.distance(0, 1), 1.0);
    }

    #[test]
    fn weighted_dijkstra_with_limit() {
        let g = WeightedGraph::new(4, [(0, 1, 0.5), (1, 2, 0.5), (2, 3, 0.5)]).unwrap();
        let d = multi_source_distances(&g, &[0], 1.0);
        assert_eq!(&d[..3], &[0.0, 0.5, 1.0]);
        assert!(d[3].is_infinite());
    }
}
