//! Gluing slab covers along a real projection into a cover of the whole
//! graph, one dimension up.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::cover::{Certificate, Cover};
use crate::error::{invalid, Error, Result};
use crate::graph::{VertexSet, WeightedGraph, EPS};
use crate::metric::RealProjection;

fn cell(x: f64, s: f64) -> i64 {
    (x / s + EPS).floor() as i64
}

/// `K` subsets of the line: class `i` drops every cell `[s k, s(k+1))` with
/// `k = i (mod K)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LineCover {
    pub class_count: usize,
    pub scale: f64,
}

impl LineCover {
    pub fn new(class_count: usize, scale: f64) -> Result<Self> {
        if class_count < 2 {
            return invalid("a line cover needs at least 2 classes");
        }
        if !(scale > 0.0) || !scale.is_finite() {
            return invalid(format!("line cover scale must be positive, got {scale}"));
        }
        Ok(Self { class_count, scale })
    }

    pub fn contains(&self, class: usize, x: f64) -> bool {
        cell(x, self.scale).rem_euclid(self.class_count as i64) as usize != class
    }

    /// Classes containing `x`.
    pub fn classes_of(&self, x: f64) -> impl Iterator<Item = usize> + '_ {
        (0..self.class_count).filter(move |&i| self.contains(i, x))
    }

    /// The maximal run of `class` containing `x`, as `[lo, hi)`.
    pub fn run(&self, class: usize, x: f64) -> Option<(f64, f64)> {
        if !self.contains(class, x) {
            return None;
        }
        let k = cell(x, self.scale);
        let kk = self.class_count as i64;
        // Last removed cell at or below k.
        let removed = k - (k - class as i64).rem_euclid(kk);
        Some(((removed + 1) as f64 * self.scale, (removed + kk) as f64 * self.scale))
    }
}

/// One of the two alternating families of half-open `s2`-intervals:
/// phase 1 holds `[2k s2, (2k+1) s2)`, phase 2 the rest.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BIntervals {
    pub s2: f64,
    pub phase: usize,
}

impl BIntervals {
    pub fn new(s2: f64, phase: usize) -> Result<Self> {
        if !(s2 > 0.0) {
            return invalid("interval length must be positive");
        }
        if phase != 1 && phase != 2 {
            return invalid(format!("phase must be 1 or 2, got {phase}"));
        }
        Ok(Self { s2, phase })
    }

    pub fn contains(&self, x: f64) -> bool {
        phase_of(cell(x, self.s2)) == self.phase
    }

    /// The interval of this family containing `x`.
    pub fn interval(&self, x: f64) -> Option<(f64, f64)> {
        let t = cell(x, self.s2);
        (phase_of(t) == self.phase).then(|| (t as f64 * self.s2, (t + 1) as f64 * self.s2))
    }
}

fn phase_of(t: i64) -> usize {
    if t.rem_euclid(2) == 0 {
        1
    } else {
        2
    }
}

/// The constants of one stitch level. `big_r1` and `big_r2` are the largest
/// bounds reported by the slab provider in each phase.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StitchConstants {
    pub k: usize,
    pub r: f64,
    pub s1: f64,
    pub big_s1: f64,
    pub s2: f64,
    pub r1: f64,
    pub big_r1: f64,
    pub r2: f64,
    pub big_r2: f64,
    pub final_bound: f64,
}

impl StitchConstants {
    /// Constants known before any slab is covered.
    pub fn scales(k: usize, r: f64) -> Self {
        let s1 = r;
        let big_s1 = (k - 1) as f64 * s1;
        let s2 = big_s1 + 2.0 * s1 + r;
        Self { k, r, s1, big_s1, s2, r1: r, big_r1: 0.0, r2: 0.0, big_r2: 0.0, final_bound: 0.0 }
    }

    fn with_phase1(mut self, big_r1: f64) -> Self {
        self.big_r1 = big_r1;
        self.r2 = big_r1 + 2.0 * self.r1 + self.r;
        self
    }

    fn with_phase2(mut self, big_r2: f64) -> Self {
        self.big_r2 = big_r2;
        self.final_bound = big_r2 + 2.0 * self.r2;
        self
    }

    fn record(&self, cert: Certificate) -> Certificate {
        cert.with_param("K", self.k as f64)
            .with_param("s1", self.s1)
            .with_param("S1", self.big_s1)
            .with_param("s2", self.s2)
            .with_param("r1", self.r1)
            .with_param("R1", self.big_r1)
            .with_param("r2", self.r2)
            .with_param("R2", self.big_r2)
    }
}

/// A request to cover `f^{-1}([lo, hi))` at scale `rho`.
#[derive(Clone, Debug, PartialEq)]
pub struct SlabRequest {
    pub lo: f64,
    pub hi: f64,
    pub rho: f64,
    pub span_cap: f64,
    pub required_sets: usize,
    pub required_coverage: usize,
    pub phase: usize,
    /// Vertices of the slab, in parent ids.
    pub vertices: VertexSet,
}

impl SlabRequest {
    fn error(&self, reason: impl Into<String>) -> Error {
        Error::Provider { lo: self.lo, hi: self.hi, rho: self.rho, reason: reason.into() }
    }
}

/// A provider's answer: sets in parent ids and the bound it vouches for.
#[derive(Clone, Debug, PartialEq)]
pub struct SlabCover {
    pub sets: Vec<VertexSet>,
    pub bound: f64,
}

pub trait SlabProvider: Sync {
    fn cover_slab(&self, g: &WeightedGraph, f: &RealProjection, req: &SlabRequest) -> Result<SlabCover>;
}

impl<F> SlabProvider for F
where
    F: Fn(&WeightedGraph, &RealProjection, &SlabRequest) -> Result<SlabCover> + Sync,
{
    fn cover_slab(&self, g: &WeightedGraph, f: &RealProjection, req: &SlabRequest) -> Result<SlabCover> {
        self(g, f, req)
    }
}

/// Optional settings for [`stitch_with`].
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct StitchOptions {
    /// `(a, b)` with provider bounds `D(rho, S) <= a rho + b S`; enables the
    /// closed-form cross-check.
    pub linear: Option<(f64, f64)>,
}

/// Closed-form bound `20a(6a + b(n+4)) r` for a linear provider, `n = K - 2`.
pub fn linear_closed_form(a: f64, b: f64, k: usize, r: f64) -> f64 {
    let n = k as f64 - 2.0;
    20.0 * a * (6.0 * a + b * (n + 4.0)) * r
}

/// Covers `g` by `k` sets of coverage `coverage` from slab covers of
/// coverage `coverage + 1`.
pub fn stitch(
    g: &WeightedGraph,
    f: &RealProjection,
    provider: &dyn SlabProvider,
    k: usize,
    coverage: usize,
    r: f64,
) -> Result<(Cover, StitchConstants)> {
    stitch_with(g, f, provider, k, coverage, r, StitchOptions::default())
}

pub fn stitch_with(
    g: &WeightedGraph,
    f: &RealProjection,
    provider: &dyn SlabProvider,
    k: usize,
    coverage: usize,
    r: f64,
    opts: StitchOptions,
) -> Result<(Cover, StitchConstants)> {
    if !(r > 0.0) {
        return invalid(format!("scale must be positive, got {r}"));
    }
    if coverage == 0 || coverage >= k {
        return invalid(format!("target coverage {coverage} must lie in 1..{k}"));
    }
    let n = g.vertex_count();
    if f.len() != n {
        return invalid("projection length differs from the vertex count");
    }
    if let Some(v) = (0..n).find(|&v| f.get(v).is_none()) {
        return invalid(format!("projection undefined at vertex {v}"));
    }
    let consts = StitchConstants::scales(k, r);
    let line = LineCover::new(k, consts.s1)?;

    let mut slabs: [BTreeMap<i64, Vec<usize>>; 2] = Default::default();
    for v in 0..n {
        let t = cell(f.value(v), consts.s2);
        slabs[phase_of(t) - 1].entry(t).or_default().push(v);
    }

    let run_phase = |phase: usize, rho: f64| -> Result<(Vec<Vec<VertexSet>>, f64)> {
        let requests: Vec<SlabRequest> = slabs[phase - 1]
            .iter()
            .map(|(&t, vs)| SlabRequest {
                lo: t as f64 * consts.s2,
                hi: (t + 1) as f64 * consts.s2,
                rho,
                span_cap: consts.s2,
                required_sets: k,
                required_coverage: coverage + 1,
                phase,
                vertices: VertexSet::from(vs.clone()),
            })
            .collect();
        let answers: Vec<Result<SlabCover>> =
            requests.par_iter().map(|req| checked(provider, g, f, req)).collect();
        let mut sets = Vec::with_capacity(answers.len());
        let mut worst = 0.0f64;
        for a in answers {
            let a = a?;
            worst = worst.max(a.bound);
            sets.push(a.sets);
        }
        Ok((sets, worst))
    };

    let (phase1, big_r1) = run_phase(1, consts.r1)?;
    let consts = consts.with_phase1(big_r1);
    let (phase2, big_r2) = run_phase(2, consts.r2)?;
    let consts = consts.with_phase2(big_r2);

    let mut out: Vec<Vec<usize>> = vec![Vec::new(); k];
    for slab in &phase1 {
        for (j, s) in slab.iter().enumerate() {
            out[j].extend(s.iter().filter(|&v| line.contains(j, f.value(v))));
        }
    }
    for slab in &phase2 {
        for (j, s) in slab.iter().enumerate() {
            out[j].extend(s.iter());
        }
    }

    let mut cert = consts.record(Certificate::new("stitch", r, consts.final_bound, coverage));
    if let Some((a, b)) = opts.linear {
        cert = cert
            .with_param("a", a)
            .with_param("b", b)
            .with_param("closed_form", linear_closed_form(a, b, k, r));
    }
    let cover = Cover::new(n, out.into_iter().map(VertexSet::from).collect(), cert)?;
    Ok((cover, consts))
}

fn checked(provider: &dyn SlabProvider, g: &WeightedGraph, f: &RealProjection, req: &SlabRequest) -> Result<SlabCover> {
    let ans = provider.cover_slab(g, f, req)?;
    if ans.sets.len() != req.required_sets {
        return Err(req.error(format!("returned {} sets, expected {}", ans.sets.len(), req.required_sets)));
    }
    if !(ans.bound >= 0.0) {
        return Err(req.error(format!("reported bound {} is not a nonnegative number", ans.bound)));
    }
    let mut count = BTreeMap::new();
    for s in &ans.sets {
        for v in s.iter() {
            if !req.vertices.contains(v) {
                return Err(req.error(format!("vertex {v} lies outside the slab")));
            }
            *count.entry(v).or_insert(0usize) += 1;
        }
    }
    if let Some(v) = req
        .vertices
        .iter()
        .find(|v| count.get(v).copied().unwrap_or(0) < req.required_coverage)
    {
        return Err(req.error(format!(
            "vertex {v} covered {} times, expected at least {}",
            count.get(&v).copied().unwrap_or(0),
            req.required_coverage
        )));
    }
    Ok(ans)
}

/// The guarded subgraph of a slab: everything with `f` in
/// `[lo - rho, hi + rho)`.
#[derive(Clone, Debug)]
pub struct GuardedSlab {
    pub graph: WeightedGraph,
    pub to_parent: Vec<usize>,
    pub projection: RealProjection,
    /// Span of the extended interval, `hi - lo + 2 rho`.
    pub span: f64,
}

pub fn guarded_slab(g: &WeightedGraph, f: &RealProjection, lo: f64, hi: f64, rho: f64) -> GuardedSlab {
    let keep: VertexSet = (0..g.vertex_count())
        .filter(|&v| f.get(v).is_some_and(|x| x >= lo - rho - EPS && x < hi + rho - EPS))
        .collect();
    let (graph, to_parent) = g.induced_subgraph(&keep);
    let projection = f.pull_back(&to_parent);
    GuardedSlab { graph, to_parent, projection, span: hi - lo + 2.0 * rho }
}

/// Runs an intrinsic cover routine on the guarded slab and restricts its
/// sets back to the slab itself. The routine sees the extended span; its
/// bound, stated in the intrinsic metric, also bounds the extrinsic
/// `rho`-components of the restricted sets.
pub fn intrinsic_adapter<F>(g: &WeightedGraph, f: &RealProjection, req: &SlabRequest, inner: F) -> Result<SlabCover>
where
    F: FnOnce(&GuardedSlab) -> Result<SlabCover>,
{
    let slab = guarded_slab(g, f, req.lo, req.hi, req.rho);
    let local = inner(&slab)?;
    let sets = local
        .sets
        .iter()
        .map(|s| {
            s.iter()
                .map(|v| slab.to_parent[v])
                .filter(|&v| req.vertices.contains(v))
                .collect()
        })
        .collect();
    Ok(SlabCover { sets, bound: local.bound })
}
