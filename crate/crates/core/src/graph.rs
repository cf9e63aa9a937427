//! Weighted graphs and vertex sets.
//!
//! Vertices are `0..vertex_count`. Every edge weight is strictly positive;
//! parallel edges are kept but only the lightest one matters for distances.

use std::fmt::Write as _;
use std::io::{BufRead, BufReader, Read};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Tolerance used for every threshold comparison on distances.
pub const EPS: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
}

/// A finite graph with positive edge lengths.
#[derive(Clone, Debug)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<(usize, f64)>>,
    unit: bool,
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    vertex_count: usize,
    edges: Vec<(usize, usize, f64)>,
}

impl WeightedGraph {
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<Self> {
        let mut g = Self::empty(vertex_count);
        for (u, v, w) in edges {
            g.add_edge(u, v, w)?;
        }
        Ok(g)
    }

    /// Unit-weight graph from an edge list.
    pub fn unweighted(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::new(vertex_count, edges.into_iter().map(|(u, v)| (u, v, 1.0)))
    }

    pub fn empty(vertex_count: usize) -> Self {
        Self {
            n: vertex_count,
            edges: Vec::new(),
            adj: vec![Vec::new(); vertex_count],
            unit: true,
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize, weight: f64) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return invalid(format!("self-loop at vertex {u}"));
        }
        if !(weight > 0.0) || !weight.is_finite() {
            return invalid(format!("edge {u}-{v} has non-positive or non-finite weight {weight}"));
        }
        self.unit &= weight == 1.0;
        self.edges.push(Edge { u, v, weight });
        self.adj[u].push((v, weight));
        self.adj[v].push((u, weight));
        Ok(())
    }

    /// Appends an isolated vertex and returns its id.
    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.n += 1;
        self.n - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, f64)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// True when every edge has weight exactly 1.
    pub fn is_unit_weight(&self) -> bool {
        self.unit
    }

    pub fn max_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.weight).fold(0.0, f64::max)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::InvalidVertex { vertex: v, count: self.n })
        }
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Connected components, each sorted, ordered by their smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut head = 0;
            while head < members.len() {
                let u = members[head];
                head += 1;
                for &(w, _) in &self.adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.connected_components().len() == 1
    }

    /// Subgraph induced by `s` with inherited weights. The returned mapping
    /// sends each new vertex id to its id in `self`.
    pub fn induced_subgraph(&self, s: &VertexSet) -> (WeightedGraph, Vec<usize>) {
        let mut local = vec![usize::MAX; self.n];
        for (i, v) in s.iter().enumerate() {
            local[v] = i;
        }
        let mut h = WeightedGraph::empty(s.len());
        for e in &self.edges {
            let (a, b) = (local[e.u], local[e.v]);
            if a != usize::MAX && b != usize::MAX {
                h.unit &= e.weight == 1.0;
                h.edges.push(Edge { u: a, v: b, weight: e.weight });
                h.adj[a].push((b, e.weight));
                h.adj[b].push((a, e.weight));
            }
        }
        (h, s.as_slice().to_vec())
    }

    /// Replaces edge `edge` by a path whose pieces carry the given fractions
    /// of the original weight. New vertices are appended after the existing ones.
    pub fn subdivide_edge(&self, edge: usize, split: &[f64]) -> Result<WeightedGraph> {
        let Some(&Edge { u, v, weight }) = self.edges.get(edge) else {
            return invalid(format!("edge index {edge} out of range"));
        };
        if split.is_empty() {
            return invalid("empty split");
        }
        if split.iter().any(|&x| !(x > 0.0)) {
            return invalid("split fractions must be positive");
        }
        let total: f64 = split.iter().sum();
        if (total - 1.0).abs() > EPS {
            return invalid(format!("split fractions sum to {total}, expected 1"));
        }
        let mut g = WeightedGraph::empty(self.n);
        for (i, e) in self.edges.iter().enumerate() {
            if i != edge {
                g.add_edge(e.u, e.v, e.weight)?;
            }
        }
        let mut prev = u;
        for (i, frac) in split.iter().enumerate() {
            let next = if i + 1 == split.len() { v } else { g.add_vertex() };
            g.add_edge(prev, next, weight * frac)?;
            prev = next;
        }
        Ok(g)
    }

    /// Replaces every edge by a path on `k + 1` edges, each carrying the
    /// original weight, so all original distances scale by `k + 1`.
    /// Original vertices keep their ids.
    pub fn subdivide_all(&self, k: usize) -> WeightedGraph {
        let mut g = WeightedGraph::empty(self.n);
        for e in &self.edges {
            let mut prev = e.u;
            for i in 0..=k {
                let next = if i == k { e.v } else { g.add_vertex() };
                g.add_edge(prev, next, e.weight).expect("valid subdivision");
                prev = next;
            }
        }
        g
    }

    /// Splits every edge heavier than 1 into `ceil(w)` equal pieces.
    /// Original vertices keep their ids.
    pub fn subdivide_heavy(&self) -> WeightedGraph {
        let mut g = WeightedGraph::empty(self.n);
        for e in &self.edges {
            let pieces = if e.weight > 1.0 { e.weight.ceil() as usize } else { 1 };
            let w = e.weight / pieces as f64;
            let mut prev = e.u;
            for i in 0..pieces {
                let next = if i + 1 == pieces { e.v } else { g.add_vertex() };
                g.add_edge(prev, next, w).expect("valid subdivision");
                prev = next;
            }
        }
        g
    }

    /// Line-oriented text: header `n m`, then `u v w` per edge.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.edges.len());
        for e in &self.edges {
            let _ = writeln!(s, "{} {} {}", e.u, e.v, e.weight);
        }
        s
    }

    pub fn from_text(input: impl Read) -> Result<Self> {
        let reader = BufReader::new(input);
        let mut lines = reader
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l))
            .filter(|(_, l)| l.as_ref().map_or(true, |l| !l.trim().is_empty() && !l.trim_start().starts_with('#')));
        let (line, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing header".into() })?;
        let header = header?;
        let nums = parse_fields::<usize>(&header, line)?;
        let [n, m] = nums[..] else {
            return Err(Error::Parse { line, msg: "header must be `n m`".into() });
        };
        let mut g = WeightedGraph::empty(n);
        for (line, l) in lines {
            let l = l?;
            let f: Vec<&str> = l.split_whitespace().collect();
            if f.len() != 2 && f.len() != 3 {
                return Err(Error::Parse { line, msg: "expected `u v [w]`".into() });
            }
            let p = |s: &str| s.parse::<usize>().map_err(|e| Error::Parse { line, msg: e.to_string() });
            let w = match f.get(2) {
                Some(s) => s.parse::<f64>().map_err(|e| Error::Parse { line, msg: e.to_string() })?,
                None => 1.0,
            };
            g.add_edge(p(f[0])?, p(f[1])?, w)?;
        }
        if g.edge_count() != m {
            return Err(Error::Parse {
                line: 1,
                msg: format!("header announces {m} edges, found {}", g.edge_count()),
            });
        }
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        let doc = GraphDoc {
            vertex_count: self.n,
            edges: self.edges.iter().map(|e| (e.u, e.v, e.weight)).collect(),
        };
        serde_json::to_string_pretty(&doc).expect("graph serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: GraphDoc = serde_json::from_str(s)?;
        Self::new(doc.vertex_count, doc.edges)
    }

    /// Reads either format, picking JSON when the first non-blank byte is `{`.
    pub fn parse(s: &str) -> Result<Self> {
        if s.trim_start().starts_with('{') {
            Self::from_json(s)
        } else {
            Self::from_text(s.as_bytes())
        }
    }
}

pub(crate) fn parse_fields<T: std::str::FromStr>(l: &str, line: usize) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    l.split_whitespace()
        .map(|t| t.parse::<T>().map_err(|e| Error::Parse { line, msg: format!("{t:?}: {e}") }))
        .collect()
}

/// A set of vertex ids, kept sorted and free of duplicates.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    pub fn full(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn from_sorted_unchecked(v: Vec<usize>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        Self(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn insert(&mut self, v: usize) -> bool {
        match self.0.binary_search(&v) {
            Ok(_) => false,
            Err(i) => {
                self.0.insert(i, v);
                true
            }
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut v: Vec<usize> = self.0.iter().chain(other.0.iter()).copied().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        self.iter().filter(|&v| other.contains(v)).collect()
    }

    pub fn filter(&self, mut keep: impl FnMut(usize) -> bool) -> VertexSet {
        Self(self.0.iter().copied().filter(|&v| keep(v)).collect())
    }

    /// Boolean membership table over `0..n`.
    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for v in self.iter() {
            m[v] = true;
        }
        m
    }

    /// Applies an id mapping (e.g. local ids of an induced subgraph to parent ids).
    pub fn map(&self, to: &[usize]) -> VertexSet {
        self.iter().map(|v| to[v]).collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        v.into_iter().collect()
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(v: [usize; N]) -> Self {
        v.into_iter().collect()
    }
}
