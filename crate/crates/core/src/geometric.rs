//! Covers of geometric graphs by `d + 1` sets: graphs whose vertices sit at
//! pairwise distance at least 1 with short edges, unit-ball graphs, and
//! subgraphs of grids. One coordinate is stitched away per recursion level
//! until every coordinate is confined to a box.

use std::io::Read;
use std::sync::Mutex;

use crate::cover::{Certificate, Cover};
use crate::error::{Error, Result};
use crate::graph::{parse_fields, VertexSet, WeightedGraph, EPS};
use crate::metric::RealProjection;
use crate::stitch::{intrinsic_adapter, stitch, SlabCover};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmbeddingMode {
    /// Points pairwise at least 1 apart, adjacent points at most `C` apart.
    Separation,
    /// Adjacent exactly when at most 1 apart.
    UnitBall,
}

impl EmbeddingMode {
    pub fn name(self) -> &'static str {
        match self {
            EmbeddingMode::Separation => "separation",
            EmbeddingMode::UnitBall => "unit-ball",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "separation" => Some(EmbeddingMode::Separation),
            "unit-ball" => Some(EmbeddingMode::UnitBall),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Embedding {
    pub dimension: usize,
    pub stretch: f64,
    pub mode: EmbeddingMode,
    pub points: Vec<Vec<f64>>,
}

impl Embedding {
    pub fn new(mode: EmbeddingMode, dimension: usize, stretch: f64, points: Vec<Vec<f64>>) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::Embedding("dimension must be at least 1".into()));
        }
        if mode == EmbeddingMode::Separation && !(stretch >= 1.0) {
            return Err(Error::Embedding(format!("stretch must be at least 1, got {stretch}")));
        }
        if let Some(i) = points.iter().position(|p| p.len() != dimension || p.iter().any(|x| !x.is_finite())) {
            return Err(Error::Embedding(format!("point {i} is not a finite {dimension}-vector")));
        }
        let stretch = if mode == EmbeddingMode::UnitBall { 1.0 } else { stretch };
        Ok(Self { dimension, stretch, mode, points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    fn pull_back(&self, to_parent: &[usize]) -> Embedding {
        Embedding { points: to_parent.iter().map(|&v| self.points[v].clone()).collect(), ..self.clone() }
    }

    /// Header `<mode> <d> <C>`, then one point per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.mode.name(), self.dimension, self.stretch);
        for p in &self.points {
            let xs: Vec<String> = p.iter().map(|x| x.to_string()).collect();
            s.push_str(&xs.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn from_text(mut input: impl Read) -> Result<Self> {
        let mut text = String::new();
        input.read_to_string(&mut text)?;
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hl, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing header".into() })?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Parse { line: hl, msg: "expected `<mode> <d> <C>`".into() });
        }
        let mode = EmbeddingMode::parse(fields[0])
            .ok_or_else(|| Error::Parse { line: hl, msg: format!("unknown mode {:?}", fields[0]) })?;
        let d: usize = fields[1].parse().map_err(|_| Error::Parse { line: hl, msg: "bad dimension".into() })?;
        let c: f64 = fields[2].parse().map_err(|_| Error::Parse { line: hl, msg: "bad stretch".into() })?;
        let mut points = Vec::new();
        for (i, l) in lines {
            let p: Vec<f64> = parse_fields(l, i)?;
            if p.len() != d {
                return Err(Error::Parse { line: i, msg: format!("expected {d} coordinates, found {}", p.len()) });
            }
            points.push(p);
        }
        Embedding::new(mode, d, c, points)
    }
}

fn euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Violations of the embedding's defining conditions, if any.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct EmbeddingReport {
    pub violations: Vec<String>,
}

impl EmbeddingReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every pair of points against the embedding's mode.
pub fn validate_embedding(emb: &Embedding, g: &WeightedGraph) -> EmbeddingReport {
    let mut out = EmbeddingReport::default();
    let n = g.vertex_count();
    if emb.len() != n {
        out.violations.push(format!("{} points for {n} vertices", emb.len()));
        return out;
    }
    let mut adjacent = vec![Vec::new(); n];
    for e in g.edges() {
        adjacent[e.u].push(e.v);
        adjacent[e.v].push(e.u);
    }
    for v in adjacent.iter_mut() {
        v.sort_unstable();
    }
    for u in 0..n {
        for v in u + 1..n {
            let d = euclid(&emb.points[u], &emb.points[v]);
            let adj = adjacent[u].binary_search(&v).is_ok();
            match emb.mode {
                EmbeddingMode::Separation => {
                    if d < 1.0 - EPS {
                        out.violations.push(format!("points {u} and {v} are {d} apart"));
                    }
                    if adj && d > emb.stretch + EPS {
                        out.violations.push(format!("edge {u}-{v} spans {d} > {}", emb.stretch));
                    }
                }
                EmbeddingMode::UnitBall => {
                    if adj != (d <= 1.0 + EPS) {
                        out.violations.push(format!("points {u} and {v} at {d}: adjacency {adj}"));
                    }
                }
            }
        }
    }
    out
}

/// `f(v) = x_axis(v) / divisor`.
pub fn coordinate_projection(emb: &Embedding, axis: usize, divisor: f64) -> Result<RealProjection> {
    if axis >= emb.dimension {
        return Err(Error::Embedding(format!("axis {axis} out of range for dimension {}", emb.dimension)));
    }
    if !(divisor > 0.0) {
        return Err(Error::Embedding(format!("divisor must be positive, got {divisor}")));
    }
    Ok(RealProjection::new(emb.points.iter().map(|p| p[axis] / divisor).collect()))
}

/// The unit-ball graph of a point set, with unit edge weights.
pub fn unit_ball_graph(points: &[Vec<f64>]) -> WeightedGraph {
    let n = points.len();
    let mut g = WeightedGraph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if euclid(&points[u], &points[v]) <= 1.0 + EPS {
                g.add_edge(u, v, 1.0).expect("distinct vertices");
            }
        }
    }
    g
}

/// Most points pairwise at least 1 apart that fit in a `[0, side]^d` box.
pub fn packing_bound(side: f64, d: usize) -> f64 {
    ((side * (d as f64).sqrt() - EPS).ceil().max(0.0) + 1.0).powi(d as i32)
}

/// Intrinsic component diameter bound for a unit-ball graph in a
/// `[0, side]^d` box.
pub fn unit_ball_base_bound(side: f64, d: usize) -> f64 {
    2.0 * ((d as f64).sqrt() * side - EPS).ceil().max(1.0).powi(d as i32)
}

/// What happened at one recursion level.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelRecord {
    /// Number of coordinates still free.
    pub free: usize,
    pub vertices: usize,
    pub required_coverage: usize,
    pub observed_coverage: usize,
}

/// A fully boxed piece.
#[derive(Clone, Debug, PartialEq)]
pub struct BaseRecord {
    pub points: usize,
    pub box_side: f64,
    /// Packing limit on `points` (separation mode only).
    pub packing_limit: Option<f64>,
    pub bound: f64,
}

#[derive(Debug, Default)]
pub struct GeometricTrace {
    pub levels: Vec<LevelRecord>,
    pub bases: Vec<BaseRecord>,
}

impl GeometricTrace {
    /// Base pieces holding more points than the packing limit allows.
    pub fn packing_violations(&self) -> Vec<&BaseRecord> {
        self.bases
            .iter()
            .filter(|b| b.packing_limit.is_some_and(|lim| b.points as f64 > lim))
            .collect()
    }
}

struct Recursion<'a> {
    sets: usize,
    mode: EmbeddingMode,
    stretch: f64,
    trace: &'a Mutex<GeometricTrace>,
}

impl Recursion<'_> {
    /// Cover of `g` by `self.sets` sets with coverage `sets - free`, in the
    /// intrinsic metric of `g`.
    fn cover(&self, g: &WeightedGraph, emb: &Embedding, free: usize, box_side: f64, rho: f64) -> Result<SlabCover> {
        let n = g.vertex_count();
        let required = self.sets - free;
        let out = if free == 0 {
            let d = emb.dimension;
            let (bound, limit) = match self.mode {
                EmbeddingMode::Separation => {
                    let m = packing_bound(box_side, d);
                    (m * rho, Some(m))
                }
                EmbeddingMode::UnitBall => (unit_ball_base_bound(box_side, d), None),
            };
            self.trace.lock().unwrap().bases.push(BaseRecord {
                points: n,
                box_side,
                packing_limit: limit,
                bound,
            });
            SlabCover { sets: vec![VertexSet::full(n); self.sets], bound }
        } else {
            let f = coordinate_projection(emb, free - 1, self.stretch)?;
            if let Some((u, v)) = f.lipschitz_violation(g) {
                return Err(Error::Embedding(format!("edge {u}-{v} is shorter than its coordinate gap")));
            }
            let provider = |h: &WeightedGraph, f: &RealProjection, req: &crate::stitch::SlabRequest| {
                intrinsic_adapter(h, f, req, |slab| {
                    let side = box_side.max(self.stretch * slab.span);
                    self.cover(&slab.graph, &emb.pull_back(&slab.to_parent), free - 1, side, req.rho)
                })
            };
            let (c, _) = stitch(g, &f, &provider, self.sets, required, rho)?;
            SlabCover { bound: c.certificate.claimed_bound, sets: c.sets }
        };
        let mut counts = vec![0usize; n];
        for s in &out.sets {
            for v in s.iter() {
                counts[v] += 1;
            }
        }
        let observed = counts.iter().copied().min().unwrap_or(self.sets);
        self.trace.lock().unwrap().levels.push(LevelRecord {
            free,
            vertices: n,
            required_coverage: required,
            observed_coverage: observed,
        });
        if observed < required {
            return Err(Error::CoverageLedger { level: free, observed, required });
        }
        Ok(out)
    }
}

/// `d + 1` sets with coverage 1.
pub fn geometric_cover(g: &WeightedGraph, emb: &Embedding, r: f64) -> Result<Cover> {
    geometric_cover_traced(g, emb, r).map(|(c, _)| c)
}

pub fn geometric_cover_traced(g: &WeightedGraph, emb: &Embedding, r: f64) -> Result<(Cover, GeometricTrace)> {
    if !(r > 0.0) {
        return Err(Error::InvalidInput(format!("r must be positive, got {r}")));
    }
    let report = validate_embedding(emb, g);
    if let Some(v) = report.violations.first() {
        return Err(Error::Embedding(format!("{v} ({} violations)", report.violations.len())));
    }
    let d = emb.dimension;
    let trace = Mutex::new(GeometricTrace::default());
    let rec = Recursion { sets: d + 1, mode: emb.mode, stretch: emb.stretch, trace: &trace };
    let out = rec.cover(g, emb, d, 0.0, r)?;
    let scheme = match emb.mode {
        EmbeddingMode::Separation => "geometric",
        EmbeddingMode::UnitBall => "unit-ball",
    };
    let cert = Certificate::new(scheme, r, out.bound, 1)
        .with_param("d", d as f64)
        .with_param("C", emb.stretch);
    let cover = Cover::new(g.vertex_count(), out.sets, cert)?;
    Ok((cover, trace.into_inner().unwrap()))
}

/// Cover of the unit-ball graph of `points`.
pub fn unit_ball_cover(points: &[Vec<f64>], r: f64) -> Result<Cover> {
    let d = points.first().map_or(1, |p| p.len());
    let emb = Embedding::new(EmbeddingMode::UnitBall, d, 1.0, points.to_vec())?;
    geometric_cover(&unit_ball_graph(points), &emb, r)
}

/// Cover of a subgraph of the `d`-dimensional grid, given integer coordinates.
pub fn grid_subgraph_cover(g: &WeightedGraph, coords: &[Vec<f64>], r: f64) -> Result<Cover> {
    if let Some(i) = coords.iter().position(|p| p.iter().any(|x| x.fract() != 0.0)) {
        return Err(Error::Embedding(format!("coordinates of vertex {i} are not integers")));
    }
    let d = coords.first().map_or(1, |p| p.len());
    let emb = Embedding::new(EmbeddingMode::Separation, d, 1.0, coords.to_vec())?;
    geometric_cover(g, &emb, r)
}
