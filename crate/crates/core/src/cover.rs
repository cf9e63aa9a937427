//! Covers, their certificates, and the verifier that re-derives every claim
//! from exact distances.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::{VertexSet, WeightedGraph, EPS};
use crate::metric::{r_components, weak_diameter_or_zero, DistanceOracle};

/// The guarantees a cover claims for itself.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    #[serde(rename = "scheme")]
    pub scheme_name: String,
    #[serde(rename = "r")]
    pub scale_r: f64,
    #[serde(rename = "bound", with = "real")]
    pub claimed_bound: f64,
    #[serde(rename = "coverage")]
    pub claimed_coverage: usize,
    #[serde(rename = "multiplicity", default)]
    pub claimed_multiplicity: Option<usize>,
    /// When set, the bound covers each whole set rather than each of its
    /// r-components (sparse partitions).
    #[serde(default)]
    pub whole_sets: bool,
    #[serde(default, with = "real_map")]
    pub parameters: BTreeMap<String, f64>,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl Certificate {
    pub fn new(scheme: impl Into<String>, scale_r: f64, claimed_bound: f64, claimed_coverage: usize) -> Self {
        Self {
            scheme_name: scheme.into(),
            scale_r,
            claimed_bound,
            claimed_coverage,
            claimed_multiplicity: None,
            whole_sets: false,
            parameters: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn with_param(mut self, key: &str, value: f64) -> Self {
        self.parameters.insert(key.to_string(), value);
        self
    }

    pub fn param(&self, key: &str) -> Option<f64> {
        self.parameters.get(key).copied()
    }
}

/// An ordered family of vertex sets together with its certificate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cover {
    #[serde(flatten)]
    pub certificate: Certificate,
    pub vertex_count: usize,
    pub sets: Vec<VertexSet>,
}

impl Cover {
    pub fn new(vertex_count: usize, sets: Vec<VertexSet>, certificate: Certificate) -> Result<Self> {
        if certificate.claimed_coverage > sets.len() {
            return invalid(format!(
                "claimed coverage {} exceeds the {} sets",
                certificate.claimed_coverage,
                sets.len()
            ));
        }
        if let Some(v) = sets.iter().flat_map(|s| s.iter()).find(|&v| v >= vertex_count) {
            return Err(Error::InvalidVertex { vertex: v, count: vertex_count });
        }
        Ok(Self { certificate, vertex_count, sets })
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Number of sets containing each vertex.
    pub fn coverage_counts(&self) -> Vec<usize> {
        let mut c = vec![0; self.vertex_count];
        for s in &self.sets {
            for v in s.iter() {
                c[v] += 1;
            }
        }
        c
    }

    pub fn min_coverage(&self) -> usize {
        self.coverage_counts().into_iter().min().unwrap_or(usize::MAX)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("cover serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let c: Cover = serde_json::from_str(s)?;
        Cover::new(c.vertex_count, c.sets, c.certificate)
    }

    /// Every set restricted to `keep`, renumbered through `to_local`.
    pub fn restrict(&self, keep: &[bool]) -> Vec<VertexSet> {
        self.sets.iter().map(|s| s.filter(|v| keep[v])).collect()
    }
}

/// What the verifier observed, next to what was claimed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    #[serde(with = "real_vec")]
    pub per_set_max_component_diameter: Vec<f64>,
    #[serde(with = "real_vec")]
    pub per_set_weak_diameter: Vec<f64>,
    pub min_coverage: usize,
    pub max_multiplicity: Option<usize>,
    pub coverage_ok: bool,
    pub bound_ok: bool,
    pub multiplicity_ok: bool,
    /// Checked only when the certificate carries a `closed_form` parameter.
    pub closed_form_ok: Option<bool>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn max_component_diameter(&self) -> f64 {
        self.per_set_max_component_diameter.iter().copied().fold(0.0, f64::max)
    }

    pub fn max_set_diameter(&self) -> f64 {
        self.per_set_weak_diameter.iter().copied().fold(0.0, f64::max)
    }

    /// The observed quantity the certificate's bound speaks about.
    pub fn observed_bound(&self, cert: &Certificate) -> f64 {
        if cert.whole_sets {
            self.max_set_diameter()
        } else {
            self.max_component_diameter()
        }
    }
}

/// Recomputes coverage, component diameters and (when claimed) multiplicity
/// from scratch and compares them with the certificate.
pub fn verify_cover(cover: &Cover, oracle: &DistanceOracle<'_>) -> VerificationReport {
    let cert = &cover.certificate;
    let r = cert.scale_r;
    let n = oracle.graph().vertex_count();
    oracle.precompute();

    let diameters: Vec<(f64, f64)> = cover
        .sets
        .par_iter()
        .map(|s| {
            let s = s.filter(|v| v < n);
            let comp = if r > 0.0 {
                r_components(oracle, &s, r)
                    .expect("positive scale")
                    .iter()
                    .map(|c| weak_diameter_or_zero(oracle, c))
                    .fold(0.0, f64::max)
            } else {
                f64::INFINITY
            };
            (comp, weak_diameter_or_zero(oracle, &s))
        })
        .collect();
    let (per_comp, per_set): (Vec<f64>, Vec<f64>) = diameters.into_iter().unzip();

    let min_coverage = if n == 0 {
        cert.claimed_coverage
    } else {
        cover.coverage_counts().into_iter().take(n).min().unwrap_or(0)
    };
    let max_multiplicity = cert.claimed_multiplicity.map(|_| r_multiplicity(cover, oracle, r));

    let observed = if cert.whole_sets {
        per_set.iter().copied().fold(0.0, f64::max)
    } else {
        per_comp.iter().copied().fold(0.0, f64::max)
    };
    let coverage_ok = cover.vertex_count == n && min_coverage >= cert.claimed_coverage;
    let bound_ok = observed <= cert.claimed_bound + EPS * cert.claimed_bound.abs().max(1.0);
    let multiplicity_ok = match (cert.claimed_multiplicity, max_multiplicity) {
        (Some(claim), Some(seen)) => seen <= claim,
        _ => true,
    };
    let closed_form_ok = cert.param("closed_form").map(|cf| observed <= cf + EPS);
    let pass = coverage_ok && bound_ok && multiplicity_ok && closed_form_ok.unwrap_or(true);
    VerificationReport {
        per_set_max_component_diameter: per_comp,
        per_set_weak_diameter: per_set,
        min_coverage,
        max_multiplicity,
        coverage_ok,
        bound_ok,
        multiplicity_ok,
        closed_form_ok,
        pass,
    }
}

/// Assigns every vertex to the lowest-indexed set containing it.
pub fn cover_to_partition(cover: &Cover) -> Result<Cover> {
    let mut owner = vec![usize::MAX; cover.vertex_count];
    for (i, s) in cover.sets.iter().enumerate() {
        for v in s.iter() {
            if owner[v] == usize::MAX {
                owner[v] = i;
            }
        }
    }
    if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
        return invalid(format!("vertex {v} is not covered"));
    }
    let mut sets = vec![Vec::new(); cover.sets.len()];
    for (v, &o) in owner.iter().enumerate() {
        sets[o].push(v);
    }
    let mut cert = cover.certificate.clone();
    cert.claimed_coverage = 1;
    Cover::new(
        cover.vertex_count,
        sets.into_iter().map(VertexSet::from_sorted_unchecked).collect(),
        cert,
    )
}

/// Colors from the partition reduction, and the largest weak diameter of a
/// monochromatic connected component.
pub fn weak_diameter_coloring(cover: &Cover, oracle: &DistanceOracle<'_>) -> Result<(Vec<usize>, f64)> {
    let g = oracle.graph();
    let part = cover_to_partition(cover)?;
    let mut color = vec![0usize; cover.vertex_count];
    for (i, s) in part.sets.iter().enumerate() {
        for v in s.iter() {
            color[v] = i;
        }
    }
    let mut worst = 0.0f64;
    let mut seen = vec![false; g.vertex_count()];
    for s in 0..g.vertex_count() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut head = 0;
        while head < comp.len() {
            let u = comp[head];
            head += 1;
            for &(w, _) in g.neighbors(u) {
                if !seen[w] && color[w] == color[s] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        worst = worst.max(weak_diameter_or_zero(oracle, &VertexSet::from(comp)));
    }
    Ok((color, worst))
}

/// Largest number of sets met by a ball `B_r(v)`.
pub fn r_multiplicity(cover: &Cover, oracle: &DistanceOracle<'_>, r: f64) -> usize {
    let n = oracle.graph().vertex_count();
    let mut owners: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, s) in cover.sets.iter().enumerate() {
        for v in s.iter().filter(|&v| v < n) {
            owners[v].push(i);
        }
    }
    (0..n)
        .into_par_iter()
        .map(|v| {
            let row = oracle.row(v);
            let mut met = vec![false; cover.sets.len()];
            let mut count = 0;
            for (u, &d) in row.iter().enumerate() {
                if d <= r + EPS {
                    for &i in &owners[u] {
                        if !met[i] {
                            met[i] = true;
                            count += 1;
                        }
                    }
                }
            }
            count
        })
        .max()
        .unwrap_or(0)
}

/// One CSV row per (scheme, r) run.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub scheme: String,
    pub r: f64,
    pub n: usize,
    pub m: usize,
    pub sets: usize,
    pub min_coverage: usize,
    pub max_component_diameter: f64,
    pub bound: f64,
    pub multiplicity: Option<usize>,
}

impl SweepRow {
    pub const HEADER: &'static str = "scheme,r,n,m,sets,min_coverage,max_component_diameter,bound,multiplicity";

    pub fn new(g: &WeightedGraph, cover: &Cover, report: &VerificationReport) -> Self {
        Self {
            scheme: cover.certificate.scheme_name.clone(),
            r: cover.certificate.scale_r,
            n: g.vertex_count(),
            m: g.edge_count(),
            sets: cover.len(),
            min_coverage: report.min_coverage,
            max_component_diameter: report.max_component_diameter(),
            bound: cover.certificate.claimed_bound,
            multiplicity: report.max_multiplicity,
        }
    }

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.scheme,
            self.r,
            self.n,
            self.m,
            self.sets,
            self.min_coverage,
            self.max_component_diameter,
            self.bound,
            self.multiplicity.map(|m| m.to_string()).unwrap_or_default()
        )
    }
}

/// JSON has no infinity; non-finite reals travel as the string `"inf"`.
mod real {
    use serde::{Deserialize, Deserializer, Serializer};

    #[derive(serde::Deserialize)]
    #[serde(untagged)]
    pub(super) enum Repr {
        Num(f64),
        Text(String),
    }

    pub(super) fn to_f64(r: Repr) -> Result<f64, String> {
        match r {
            Repr::Num(x) => Ok(x),
            Repr::Text(t) => match t.as_str() {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                other => Err(format!("expected a number or \"inf\", got {other:?}")),
            },
        }
    }

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_finite() {
            s.serialize_f64(*x)
        } else if *x > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        to_f64(Repr::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

mod real_vec {
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    struct W(f64);

    impl serde::Serialize for W {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            super::real::serialize(&self.0, s)
        }
    }

    pub fn serialize<S: Serializer>(v: &[f64], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for &x in v {
            seq.serialize_element(&W(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<f64>, D::Error> {
        Vec::<super::real::Repr>::deserialize(d)?
            .into_iter()
            .map(|r| super::real::to_f64(r).map_err(serde::de::Error::custom))
            .collect()
    }
}

mod real_map {
    use std::collections::BTreeMap;

    use serde::ser::SerializeMap;
    use serde::{Deserialize, Deserializer, Serializer};

    struct W(f64);

    impl serde::Serialize for W {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            super::real::serialize(&self.0, s)
        }
    }

    pub fn serialize<S: Serializer>(m: &BTreeMap<String, f64>, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(m.len()))?;
        for (k, &v) in m {
            map.serialize_entry(k, &W(v))?;
        }
        map.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<String, f64>, D::Error> {
        BTreeMap::<String, super::real::Repr>::deserialize(d)?
            .into_iter()
            .map(|(k, r)| super::real::to_f64(r).map(|x| (k, x)).map_err(serde::de::Error::custom))
            .collect()
    }
}
