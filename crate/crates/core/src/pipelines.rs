//! End-to-end covers: three sets for graphs without a `K_{3,p}` minor
//! (planar and bounded-genus graphs in particular), and the sparse partition
//! scheme for chordal graphs.

use crate::banana::annulus_cover_components;
use crate::cover::{Certificate, Cover};
use crate::error::{invalid, Result};
use crate::graph::{VertexSet, WeightedGraph, EPS};
use crate::metric::{r_components, rooted_projection, DistanceOracle, RealProjection, Unreachable};
use crate::stitch::{intrinsic_adapter, stitch_with, SlabCover, SlabRequest, StitchConstants, StitchOptions};

/// Parameters of the `K_{3,p}` pipeline.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PipelineParams {
    pub p: usize,
    pub r: f64,
    /// Split edges heavier than 1 before covering instead of rejecting them.
    pub subdivide: bool,
}

impl PipelineParams {
    pub fn new(p: usize, r: f64) -> Self {
        Self { p, r, subdivide: false }
    }

    pub fn genus(g: usize, r: f64) -> Self {
        Self::new(2 * g + 3, r)
    }

    fn check(&self) -> Result<()> {
        if self.p < 3 {
            return invalid(format!("p must be at least 3, got {}", self.p));
        }
        if !(self.r > 0.0) || !self.r.is_finite() {
            return invalid(format!("r must be positive, got {}", self.r));
        }
        Ok(())
    }
}

/// Coefficients `(a, b, c)` of the slab bound `a rho + b S + c` for the
/// modulus-3 annulus provider with `q = 6S + 2`.
pub fn provider_linear_form(p: usize) -> (f64, f64, f64) {
    let p = p as f64;
    (7.0 * p + 10.0, 18.0 * p + 12.0, 6.0 * p + 4.0)
}

fn banana_q(span: f64) -> f64 {
    6.0 * span + 2.0
}

/// Slab provider of the pipeline: slabs whose guard band reaches the root
/// are taken whole, the rest get a modulus-3 annulus cover in their
/// intrinsic metric.
fn k3p_slab(p: usize) -> impl Fn(&WeightedGraph, &RealProjection, &SlabRequest) -> Result<SlabCover> + Sync {
    move |g, f, req| {
        intrinsic_adapter(g, f, req, |h| {
            let n = h.graph.vertex_count();
            let root_inside = req.lo - req.rho <= EPS;
            if root_inside {
                return Ok(SlabCover { sets: vec![VertexSet::full(n); 3], bound: 2.0 * h.span });
            }
            let c = annulus_cover_components(&h.graph, req.rho, banana_q(h.span), p, 3)?;
            Ok(SlabCover { sets: c.sets, bound: c.certificate.claimed_bound })
        })
    }
}

/// Three sets with coverage 1 whose r-components have bounded weak diameter,
/// for graphs assumed to exclude `K_{3,p}` as a minor. The assumption is not
/// checked; the verifier is what makes the output trustworthy.
pub fn k3p_cover(g: &WeightedGraph, p: usize, r: f64) -> Result<Cover> {
    k3p_cover_with(g, &PipelineParams::new(p, r))
}

pub fn k3p_cover_with(g: &WeightedGraph, params: &PipelineParams) -> Result<Cover> {
    params.check()?;
    let heavy = g.edges().iter().any(|e| e.weight > 1.0 + EPS);
    if heavy && !params.subdivide {
        return invalid("edge weights must lie in (0, 1]; enable subdivision to split heavier edges");
    }
    if heavy {
        let h = g.subdivide_heavy();
        let c = k3p_components(&h, params)?;
        let keep: Vec<bool> = (0..h.vertex_count()).map(|v| v < g.vertex_count()).collect();
        let mut cert = c.certificate.clone();
        cert.notes.push("heavy edges subdivided".into());
        return Cover::new(g.vertex_count(), c.restrict(&keep), cert);
    }
    k3p_components(g, params)
}

fn k3p_components(g: &WeightedGraph, params: &PipelineParams) -> Result<Cover> {
    let (p, r) = (params.p, params.r);
    let mut sets: Vec<Vec<usize>> = vec![Vec::new(); 3];
    let mut bound = 0.0f64;
    let mut trail: Option<StitchConstants> = None;
    let (a, b, c) = provider_linear_form(p);
    // With rho >= 1 the additive constant folds into the rho coefficient;
    // the adapter's span S + 2 rho moves 2b onto rho as well.
    let linear = (r >= 1.0).then_some((a + c + 2.0 * b, b));
    let provider = k3p_slab(p);

    for comp in g.connected_components() {
        let (h, to_parent) = g.induced_subgraph(&VertexSet::from_sorted_unchecked(comp));
        let f = rooted_projection(&h, 0, Unreachable::Error)?;
        let opts = StitchOptions { linear };
        let (cover, consts) = stitch_with(&h, &f, &provider, 3, 1, r, opts)?;
        for (acc, s) in sets.iter_mut().zip(&cover.sets) {
            acc.extend(s.iter().map(|v| to_parent[v]));
        }
        if trail.is_none_or(|t| consts.final_bound > t.final_bound) {
            trail = Some(consts);
        }
        bound = bound.max(consts.final_bound);
    }

    let mut cert = Certificate::new("k3p", r, bound, 1)
        .with_param("p", p as f64)
        .with_param("provider_a", a)
        .with_param("provider_b", b)
        .with_param("provider_c", c);
    let s2 = trail.map_or(5.0 * r, |t| t.s2);
    cert = cert.with_param("s2", s2);
    if let Some(t) = trail {
        cert = cert
            .with_param("R1", t.big_r1)
            .with_param("r2", t.r2)
            .with_param("R2", t.big_r2)
            .with_param("q_phase1", banana_q(s2 + 2.0 * t.r1))
            .with_param("q_phase2", banana_q(s2 + 2.0 * t.r2));
    }
    if let Some((la, lb)) = linear {
        cert = cert
            .with_param("a", la)
            .with_param("b", lb)
            .with_param("closed_form", crate::stitch::linear_closed_form(la, lb, 3, r));
    }
    cert.notes.push("q = 6S + 2 with S the guarded slab span".into());
    Cover::new(g.vertex_count(), sets.into_iter().map(VertexSet::from).collect(), cert)
}

/// Planar graphs exclude `K_{3,3}`.
pub fn planar_cover(g: &WeightedGraph, r: f64) -> Result<Cover> {
    planar_cover_with(g, r, false)
}

pub fn planar_cover_with(g: &WeightedGraph, r: f64, subdivide: bool) -> Result<Cover> {
    let mut c = k3p_cover_with(g, &PipelineParams { subdivide, ..PipelineParams::new(3, r) })?;
    c.certificate.scheme_name = "planar".into();
    Ok(c)
}

/// Graphs of Euler genus `genus` exclude `K_{3, 2 genus + 3}`.
pub fn genus_cover(g: &WeightedGraph, genus: usize, r: f64) -> Result<Cover> {
    genus_cover_with(g, genus, r, false)
}

pub fn genus_cover_with(g: &WeightedGraph, genus: usize, r: f64, subdivide: bool) -> Result<Cover> {
    let mut c = k3p_cover_with(g, &PipelineParams { subdivide, ..PipelineParams::genus(genus, r) })?;
    c.certificate.scheme_name = "genus".into();
    c.certificate.parameters.insert("genus".into(), genus as f64);
    c.certificate.notes.push("expected growth O(g^2 r)".into());
    Ok(c)
}

/// Sparse partition of a chordal graph: the `2r`-components of the two
/// annulus sets at scale `2r` (with `q = p = 2`). Parts are
/// `(20r + 12)`-bounded and every `r`-ball meets at most two of them.
pub fn chordal_scheme(g: &WeightedGraph, r: f64) -> Result<Cover> {
    if !(r > 0.0) {
        return invalid(format!("r must be positive, got {r}"));
    }
    let c = annulus_cover_components(g, 2.0 * r, 2.0, 2, 2)?;
    let oracle = DistanceOracle::new(g);
    let mut parts = Vec::new();
    for s in &c.sets {
        parts.extend(r_components(&oracle, s, 2.0 * r)?);
    }
    let mut cert = Certificate::new("chordal", r, 20.0 * r + 12.0, 1)
        .with_param("q", 2.0)
        .with_param("p", 2.0);
    cert.whole_sets = true;
    cert.claimed_multiplicity = Some(2);
    if parts.is_empty() {
        parts.push(VertexSet::new());
        cert.claimed_coverage = 0;
    }
    Cover::new(g.vertex_count(), parts, cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::verify_cover;

    fn grid(w: usize, h: usize) -> WeightedGraph {
        let id = |x: usize, y: usize| y * w + x;
        let mut e = Vec::new();
        for y in 0..h {
            for x in 0..w {
                if x + 1 < w {
                    e.push((id(x, y), id(x + 1, y)));
                }
                if y + 1 < h {
                    e.push((id(x, y), id(x, y + 1)));
                }
            }
        }
        WeightedGraph::unweighted(w * h, e).unwrap()
    }

    fn cycle(n: usize) -> WeightedGraph {
        WeightedGraph::unweighted(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn path(n: usize) -> WeightedGraph {
        WeightedGraph::unweighted(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn single_vertex() {
        let g = WeightedGraph::empty(1);
        let c = planar_cover(&g, 1.0).unwrap();
        assert_eq!(c.len(), 3);
        assert!(c.min_coverage() >= 1);
    }

    #[test]
    fn empty_graph() {
        let c = planar_cover(&WeightedGraph::empty(0), 1.0).unwrap();
        assert_eq!(c.len(), 3);
        assert!(c.sets.iter().all(|s| s.is_empty()));
    }

    #[test]
    fn grid_8x8() {
        let g = grid(8, 8);
        let c = k3p_cover(&g, 3, 1.0).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c.certificate.param("s2"), Some(5.0));
        let rep = verify_cover(&c, &DistanceOracle::new(&g));
        assert!(rep.pass, "{rep:?}");
    }

    #[test]
    fn small_grid_and_cycle() {
        let g = grid(4, 4);
        assert!(verify_cover(&planar_cover(&g, 1.0).unwrap(), &DistanceOracle::new(&g)).pass);
        let g = cycle(30);
        let c = planar_cover(&g, 2.0).unwrap();
        assert_eq!(c.certificate.param("s2"), Some(10.0));
        assert!(verify_cover(&c, &DistanceOracle::new(&g)).pass);
    }

    #[test]
    fn disconnected_input() {
        let mut g = grid(4, 4);
        let base = g.vertex_count();
        for _ in 0..5 {
            g.add_vertex();
        }
        for i in 0..4 {
            g.add_edge(base + i, base + i + 1, 1.0).unwrap();
        }
        let c = planar_cover(&g, 1.0).unwrap();
        assert!(verify_cover(&c, &DistanceOracle::new(&g)).pass);
    }

    #[test]
    fn heavy_edges() {
        let g = WeightedGraph::new(3, [(0, 1, 2.5), (1, 2, 1.0)]).unwrap();
        assert!(planar_cover(&g, 1.0).is_err());
        let c = k3p_cover_with(&g, &PipelineParams { p: 3, r: 1.0, subdivide: true }).unwrap();
        assert_eq!(c.vertex_count, 3);
        assert!(verify_cover(&c, &DistanceOracle::new(&g)).pass);
    }

    #[test]
    fn genus_parameters() {
        let g = grid(6, 6);
        let planar = planar_cover(&g, 1.0).unwrap();
        let g0 = genus_cover(&g, 0, 1.0).unwrap();
        assert_eq!(planar.sets, g0.sets);
        let bounds: Vec<f64> = (0..3).map(|k| genus_cover(&g, k, 1.0).unwrap().certificate.claimed_bound).collect();
        assert!(bounds[0] < bounds[1] && bounds[1] < bounds[2]);
    }

    #[test]
    fn closed_form_dominates() {
        let g = grid(10, 10);
        let c = planar_cover(&g, 1.0).unwrap();
        assert!(c.certificate.claimed_bound <= c.certificate.param("closed_form").unwrap());
        assert!(planar_cover(&g, 0.5).unwrap().certificate.param("closed_form").is_none());
    }

    #[test]
    fn chordal_on_paths() {
        let g = path(200);
        for r in [1.0, 2.0, 4.0] {
            let c = chordal_scheme(&g, r).unwrap();
            let rep = verify_cover(&c, &DistanceOracle::new(&g));
            assert!(rep.pass, "r = {r}: {rep:?}");
            assert!(rep.max_multiplicity.unwrap() <= 2);
            assert!(c.coverage_counts().iter().all(|&k| k == 1));
        }
        assert!(chordal_scheme(&g, 1.0).unwrap().certificate.claimed_bound <= 32.0);
        assert_eq!(chordal_scheme(&WeightedGraph::empty(1), 1.0).unwrap().len(), 1);
    }
}
