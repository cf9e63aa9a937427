//! Partitions of bounded r-multiplicity for graphs given with a path
//! decomposition.
//!
//! Vertices are peeled into non-nested levels by their bag intervals, each
//! level is cut into sections by counting interval starts, sections are
//! split into initial clusters, and clusters are merged level by level onto
//! the oldest nearby cluster.

use std::io::Read;

use crate::cover::{Certificate, Cover};
use crate::error::{Error, Result};
use crate::graph::{parse_fields, VertexSet, WeightedGraph, EPS};
use crate::metric::{multi_source_distances, r_components, weak_diameter_or_zero, DistanceOracle};

/// An ordered sequence of bags.
#[derive(Clone, Debug, PartialEq)]
pub struct PathDecomposition {
    pub vertex_count: usize,
    pub bags: Vec<VertexSet>,
}

impl PathDecomposition {
    /// Largest bag size minus one (0 when there are no bags).
    pub fn width(&self) -> usize {
        self.bags.iter().map(|b| b.len()).max().unwrap_or(1).saturating_sub(1)
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    /// Checks that the bags decompose `g`: every vertex appears, every edge
    /// sits in some bag, and every vertex's bags are consecutive.
    pub fn validate(&self, g: &WeightedGraph) -> Result<()> {
        let n = g.vertex_count();
        if self.vertex_count != n {
            return Err(Error::Decomposition(format!(
                "decomposition is over {} vertices, graph has {n}",
                self.vertex_count
            )));
        }
        let mut first = vec![usize::MAX; n];
        let mut last = vec![0; n];
        for (i, bag) in self.bags.iter().enumerate() {
            for v in bag.iter() {
                if v >= n {
                    return Err(Error::Decomposition(format!("bag {i} names vertex {v}, graph has {n}")));
                }
                if first[v] == usize::MAX {
                    first[v] = i;
                } else if last[v] + 1 != i {
                    return Err(Error::Decomposition(format!("vertex {v} has non-consecutive bags")));
                }
                last[v] = i;
            }
        }
        if let Some(v) = first.iter().position(|&f| f == usize::MAX) {
            return Err(Error::Decomposition(format!("vertex {v} is in no bag")));
        }
        for e in g.edges() {
            let lo = first[e.u].max(first[e.v]);
            let hi = last[e.u].min(last[e.v]);
            if lo > hi {
                return Err(Error::Decomposition(format!("edge {}-{} is in no bag", e.u, e.v)));
            }
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for b in &self.bags {
            let ids: Vec<String> = b.iter().map(|v| v.to_string()).collect();
            s.push_str(&ids.join(" "));
            s.push('\n');
        }
        s
    }

    /// One bag per line, ids separated by whitespace. Blank lines and lines
    /// starting with `#` are ignored.
    pub fn from_text(vertex_count: usize, mut input: impl Read) -> Result<Self> {
        let mut text = String::new();
        input.read_to_string(&mut text)?;
        let mut bags = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let ids: Vec<usize> = parse_fields(line, i + 1)?;
            bags.push(VertexSet::from(ids));
        }
        Ok(Self { vertex_count, bags })
    }
}

/// Validates the bags against `g` and deletes every bag contained in an
/// adjacent one until none is left.
pub fn normalize_pd(g: &WeightedGraph, bags: Vec<VertexSet>) -> Result<PathDecomposition> {
    let raw = PathDecomposition { vertex_count: g.vertex_count(), bags };
    raw.validate(g)?;
    let mut kept: Vec<VertexSet> = Vec::with_capacity(raw.bags.len());
    for bag in raw.bags {
        while kept.last().is_some_and(|top| is_subset(top, &bag)) {
            kept.pop();
        }
        if kept.last().is_some_and(|top| is_subset(&bag, top)) {
            continue;
        }
        kept.push(bag);
    }
    let pd = PathDecomposition { vertex_count: g.vertex_count(), bags: kept };
    debug_assert!(pd.validate(g).is_ok());
    Ok(pd)
}

fn is_subset(a: &VertexSet, b: &VertexSet) -> bool {
    a.len() <= b.len() && a.iter().all(|v| b.contains(v))
}

/// Bag interval `[first, last]` of every vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalRep {
    pub first: Vec<usize>,
    pub last: Vec<usize>,
    pub bag_count: usize,
    pub width: usize,
}

impl IntervalRep {
    /// Requires a normalized decomposition: some interval must start at every
    /// bag index.
    pub fn new(pd: &PathDecomposition) -> Result<Self> {
        let n = pd.vertex_count;
        let mut first = vec![usize::MAX; n];
        let mut last = vec![0; n];
        for (i, bag) in pd.bags.iter().enumerate() {
            for v in bag.iter() {
                first[v] = first[v].min(i);
                last[v] = i;
            }
        }
        if let Some(v) = first.iter().position(|&f| f == usize::MAX) {
            return Err(Error::Decomposition(format!("vertex {v} is in no bag")));
        }
        let mut starts = vec![false; pd.len()];
        for &f in &first {
            starts[f] = true;
        }
        if let Some(i) = starts.iter().position(|&s| !s) {
            return Err(Error::Decomposition(format!("no interval starts at bag {i}; normalize first")));
        }
        Ok(Self { first, last, bag_count: pd.len(), width: pd.width() })
    }

    #[cfg(test)]
    fn strictly_contains(&self, u: usize, v: usize) -> bool {
        self.first[u] <= self.first[v]
            && self.last[u] >= self.last[v]
            && (self.first[u], self.last[u]) != (self.first[v], self.last[v])
    }
}

/// Non-nested levels of vertices and the bag indices where each level's
/// intervals start.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelStructure {
    pub levels: Vec<VertexSet>,
    /// `starts[j]` is the sorted set of bag indices where an interval of
    /// level `j` starts.
    pub starts: Vec<Vec<usize>>,
    /// Level of every vertex (0-based).
    pub level_of: Vec<usize>,
}

impl LevelStructure {
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Number of indices in `[a, b]` where some level-`j` interval starts.
    pub fn measure(&self, j: usize, a: usize, b: usize) -> usize {
        let s = &self.starts[j];
        s.partition_point(|&x| x <= b) - s.partition_point(|&x| x < a)
    }
}

/// Repeatedly removes the vertices whose intervals are not strictly inside
/// another remaining interval.
pub fn peel_levels(rep: &IntervalRep) -> LevelStructure {
    let n = rep.first.len();
    let mut remaining: Vec<usize> = (0..n).collect();
    remaining.sort_by(|&a, &b| rep.first[a].cmp(&rep.first[b]).then(rep.last[b].cmp(&rep.last[a])));
    let mut levels = Vec::new();
    let mut level_of = vec![0; n];
    while !remaining.is_empty() {
        let mut maximal = Vec::new();
        let mut rest = Vec::new();
        // Sorted by start, then by decreasing end: a vertex is strictly
        // contained iff an earlier start reaches its end, or a same-start
        // interval ends later.
        let mut reach_before: Option<usize> = None;
        let mut i = 0;
        while i < remaining.len() {
            let s = rep.first[remaining[i]];
            let mut j = i;
            while j < remaining.len() && rep.first[remaining[j]] == s {
                j += 1;
            }
            let group_max = rep.last[remaining[i]];
            for &v in &remaining[i..j] {
                let e = rep.last[v];
                let nested = reach_before.is_some_and(|r| r >= e) || group_max > e;
                if nested {
                    rest.push(v);
                } else {
                    maximal.push(v);
                }
            }
            reach_before = Some(reach_before.map_or(group_max, |r| r.max(group_max)));
            i = j;
        }
        for &v in &maximal {
            level_of[v] = levels.len();
        }
        levels.push(maximal);
        remaining = rest;
    }
    let starts = levels
        .iter()
        .map(|lv| {
            let mut s: Vec<usize> = lv.iter().map(|&v| rep.first[v]).collect();
            s.sort_unstable();
            s.dedup();
            s
        })
        .collect();
    LevelStructure { levels: levels.into_iter().map(VertexSet::from).collect(), starts, level_of }
}

/// Scales of the construction, indexed by level (0-based).
#[derive(Clone, Debug, PartialEq)]
pub struct PwConstants {
    pub k: usize,
    pub r: f64,
    pub small_r: Vec<f64>,
    pub big_r: Vec<f64>,
    pub section_weight: Vec<f64>,
}

impl PwConstants {
    /// `r_p = 100r`, `R_j = 3(k+1)k r_j^2`, `r_j = 10 R_{j+1}`, `Q_j = 2k r_j`.
    /// A width below 1 is treated as 1.
    pub fn new(k: usize, depth: usize, r: f64) -> Self {
        let kf = k.max(1) as f64;
        let mut small_r = vec![0.0; depth];
        let mut big_r = vec![0.0; depth];
        for j in (0..depth).rev() {
            small_r[j] = if j + 1 == depth { 100.0 * r } else { 10.0 * big_r[j + 1] };
            big_r[j] = 3.0 * (kf + 1.0) * kf * small_r[j] * small_r[j];
        }
        let section_weight = small_r.iter().map(|&x| 2.0 * kf * x).collect();
        Self { k, r, small_r, big_r, section_weight }
    }

    /// `(p + 1) R_1`.
    pub fn final_bound(&self) -> f64 {
        match self.big_r.first() {
            Some(&r1) => (self.big_r.len() + 1) as f64 * r1,
            None => 0.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InitialCluster {
    pub level: usize,
    pub section: usize,
    pub members: VertexSet,
}

/// A cluster after merging through some level.
#[derive(Clone, Debug, PartialEq)]
pub struct MergedCluster {
    pub members: VertexSet,
    /// Level of its oldest initial cluster.
    pub age: usize,
    /// Lowest and highest level among its initial clusters.
    pub labels: (usize, usize),
}

/// Everything the construction built on the way, for checking.
#[derive(Clone, Debug)]
pub struct PwTrace {
    pub constants: PwConstants,
    pub levels: LevelStructure,
    pub intervals: IntervalRep,
    /// `sections[j][i]`: level-`j` vertices starting in section `i`.
    pub sections: Vec<Vec<VertexSet>>,
    pub initial: Vec<InitialCluster>,
    /// Merged clusters after each level.
    pub merged: Vec<Vec<MergedCluster>>,
}

/// Section number of a start index of rank `rank` (1-based) with weight `q`.
fn section_of(rank: usize, q: f64) -> usize {
    ((rank as f64 / q) - EPS).ceil().max(1.0) as usize - 1
}

/// Partition of `g` whose parts are `(p+1) R_1`-bounded and whose `r`-balls
/// meet at most two parts.
pub fn pw_cover(g: &WeightedGraph, pd: &PathDecomposition, r: f64) -> Result<Cover> {
    pw_cover_traced(g, pd, r).map(|(c, _)| c)
}

pub fn pw_cover_traced(g: &WeightedGraph, pd: &PathDecomposition, r: f64) -> Result<(Cover, PwTrace)> {
    if !(r > 0.0) {
        return Err(Error::InvalidInput(format!("r must be positive, got {r}")));
    }
    pd.validate(g)?;
    let rep = IntervalRep::new(pd)?;
    let levels = peel_levels(&rep);
    let depth = levels.depth();
    let consts = PwConstants::new(rep.width, depth, r);
    let oracle = DistanceOracle::new(g);
    let n = g.vertex_count();

    let mut sections = Vec::with_capacity(depth);
    let mut initial = Vec::new();
    for j in 0..depth {
        let starts = &levels.starts[j];
        let mut by_section: Vec<Vec<usize>> = Vec::new();
        for v in levels.levels[j].iter() {
            let rank = starts.partition_point(|&x| x <= rep.first[v]);
            let s = section_of(rank, consts.section_weight[j]);
            if by_section.len() <= s {
                by_section.resize(s + 1, Vec::new());
            }
            by_section[s].push(v);
        }
        let secs: Vec<VertexSet> = by_section.into_iter().map(VertexSet::from).collect();
        for (i, s) in secs.iter().enumerate() {
            for c in r_components(&oracle, s, consts.small_r[j])? {
                initial.push(InitialCluster { level: j, section: i, members: c });
            }
        }
        sections.push(secs);
    }

    // owner[v] = index into `clusters` of the merged cluster holding v.
    let mut owner = vec![usize::MAX; n];
    let mut clusters: Vec<MergedCluster> = Vec::new();
    let mut merged = Vec::with_capacity(depth);
    for j in 0..depth {
        let previous = clusters.len();
        let mut attach: Vec<(usize, usize)> = Vec::new();
        for (ci, c) in initial.iter().enumerate().filter(|(_, c)| c.level == j) {
            let target = if j == 0 {
                None
            } else {
                let sources: Vec<usize> = c.members.iter().collect();
                let d = multi_source_distances(g, &sources, consts.small_r[j]);
                (0..n)
                    .filter(|&u| d[u] <= consts.small_r[j] + EPS && owner[u] < previous)
                    .map(|u| owner[u])
                    .min_by_key(|&id| (clusters[id].age, id))
            };
            attach.push((ci, target.unwrap_or(usize::MAX)));
        }
        // Attach after the scan so every choice sees the (j-1)-merged state.
        for (ci, target) in attach {
            let c = &initial[ci];
            let id = if target == usize::MAX {
                clusters.push(MergedCluster { members: VertexSet::new(), age: j, labels: (j, j) });
                clusters.len() - 1
            } else {
                clusters[target].labels.1 = j;
                target
            };
            clusters[id].members = clusters[id].members.union(&c.members);
            for v in c.members.iter() {
                owner[v] = id;
            }
        }
        merged.push(clusters.clone());
    }

    let parts: Vec<VertexSet> = clusters.iter().map(|c| c.members.clone()).collect();
    let mut cert = Certificate::new("pathwidth", r, consts.final_bound(), 1)
        .with_param("k", rep.width as f64)
        .with_param("p", depth as f64);
    for j in 0..depth {
        cert = cert
            .with_param(&format!("r_{}", j + 1), consts.small_r[j])
            .with_param(&format!("R_{}", j + 1), consts.big_r[j])
            .with_param(&format!("Q_{}", j + 1), consts.section_weight[j]);
    }
    cert.whole_sets = true;
    cert.claimed_multiplicity = Some(2);
    let (parts, cert) = if parts.is_empty() {
        cert.claimed_coverage = 0;
        (vec![VertexSet::new()], cert)
    } else {
        (parts, cert)
    };
    let cover = Cover::new(n, parts, cert)?;
    let trace = PwTrace { constants: consts, levels, intervals: rep, sections, initial, merged };
    Ok((cover, trace))
}

/// Violations found by [`PwTrace::check_invariants`], one message each.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PwInvariantReport {
    pub section_separation: Vec<String>,
    pub initial_bound: Vec<String>,
    pub window_bound: Vec<String>,
    pub merged_diameter: Vec<String>,
    pub merged_multiplicity: Vec<String>,
    pub level_bound: Vec<String>,
}

impl PwInvariantReport {
    pub fn is_clean(&self) -> bool {
        self.section_separation.is_empty()
            && self.initial_bound.is_empty()
            && self.window_bound.is_empty()
            && self.merged_diameter.is_empty()
            && self.merged_multiplicity.is_empty()
            && self.level_bound.is_empty()
    }
}

impl PwTrace {
    /// Re-checks the intermediate guarantees of the construction:
    /// non-consecutive sections are far apart in the graph induced by the
    /// current and deeper levels, initial clusters are `R_j`-bounded,
    /// section windows hold few level vertices, and merged clusters stay
    /// bounded with balls of radius `r_j / 2` meeting at most two of them.
    pub fn check_invariants(&self, oracle: &DistanceOracle<'_>) -> PwInvariantReport {
        let g = oracle.graph();
        let n = g.vertex_count();
        let c = &self.constants;
        let k = self.intervals.width;
        let mut out = PwInvariantReport::default();
        oracle.precompute();

        if self.levels.depth() > k + 1 {
            out.level_bound.push(format!("{} levels for width {k}", self.levels.depth()));
        }

        for j in 0..self.levels.depth() {
            // Sections in the graph induced by levels >= j.
            let deep: VertexSet = (0..n).filter(|&v| self.levels.level_of[v] >= j).collect();
            let (h, to_parent) = g.induced_subgraph(&deep);
            let mut section_of = vec![usize::MAX; h.vertex_count()];
            for (i, s) in self.sections[j].iter().enumerate() {
                for v in s.iter() {
                    section_of[deep.as_slice().binary_search(&v).expect("level vertex")] = i;
                }
            }
            for (i, _) in self.sections[j].iter().enumerate() {
                let sources: Vec<usize> = (0..h.vertex_count()).filter(|&x| section_of[x] == i).collect();
                if sources.is_empty() {
                    continue;
                }
                let d = multi_source_distances(&h, &sources, c.small_r[j]);
                if let Some(x) = (0..h.vertex_count())
                    .find(|&x| d[x] <= c.small_r[j] + EPS && section_of[x] != usize::MAX && section_of[x].abs_diff(i) >= 2)
                {
                    out.section_separation.push(format!(
                        "level {}: sections {i} and {} within {}",
                        j + 1,
                        section_of[x],
                        d[x]
                    ));
                    let _ = to_parent[x];
                }
            }

            for ic in self.initial.iter().filter(|ic| ic.level == j) {
                let d = weak_diameter_or_zero(oracle, &ic.members);
                if d > c.big_r[j] + EPS {
                    out.initial_bound.push(format!("level {}: initial cluster of diameter {d}", j + 1));
                }
            }

            // Window of each section: from its first start index to the
            // index before the next section's first start.
            let firsts: Vec<usize> = self.sections[j]
                .iter()
                .filter_map(|s| s.iter().map(|v| self.intervals.first[v]).min())
                .collect();
            for (i, &a) in firsts.iter().enumerate() {
                let b = firsts.get(i + 1).map_or(self.intervals.bag_count - 1, |&x| x - 1);
                let mu = self.levels.measure(j, a, b);
                let inside: VertexSet = self.levels.levels[j]
                    .filter(|v| self.intervals.first[v] <= b && self.intervals.last[v] >= a);
                let cap = (mu + 1) * (k + 1);
                if inside.len() > cap {
                    out.window_bound.push(format!(
                        "level {}: window [{a}, {b}] holds {} level vertices, cap {cap}",
                        j + 1,
                        inside.len()
                    ));
                }
                for comp in r_components(oracle, &inside, c.small_r[j]).unwrap_or_default() {
                    let d = weak_diameter_or_zero(oracle, &comp);
                    if d > cap as f64 * c.small_r[j] + EPS {
                        out.window_bound.push(format!("level {}: window component of diameter {d}", j + 1));
                    }
                }
            }

            let merged = &self.merged[j];
            for m in merged.iter().filter(|m| !m.members.is_empty()) {
                let d = weak_diameter_or_zero(oracle, &m.members);
                let cap = (1 + m.labels.1 + 1) as f64 * c.big_r[m.labels.0];
                if d > cap + EPS * cap.max(1.0) {
                    out.merged_diameter.push(format!("level {}: merged cluster of diameter {d} above {cap}", j + 1));
                }
            }
            let mut owner = vec![usize::MAX; n];
            for (id, m) in merged.iter().enumerate() {
                for v in m.members.iter() {
                    owner[v] = id;
                }
            }
            let radius = c.small_r[j] / 2.0;
            for v in 0..n {
                let row = oracle.row(v);
                let mut met: Vec<usize> = (0..n)
                    .filter(|&u| row[u] <= radius + EPS && owner[u] != usize::MAX)
                    .map(|u| owner[u])
                    .collect();
                met.sort_unstable();
                met.dedup();
                if met.len() > 2 {
                    out.merged_multiplicity.push(format!(
                        "level {}: ball at {v} meets {} merged clusters",
                        j + 1,
                        met.len()
                    ));
                }
            }
        }
        out
    }
}
