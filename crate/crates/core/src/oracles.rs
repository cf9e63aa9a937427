//! Brute-force ground truth for tiny instances. These share no code with
//! the shortest-path and component routines they are used to check.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{WeightedGraph, EPS};
use crate::metric::multi_source_distances;

pub const ORACLE_CAP: usize = 10;

/// All-pairs distances by Floyd-Warshall.
pub fn floyd_warshall(g: &WeightedGraph) -> Vec<Vec<f64>> {
    let n = g.vertex_count();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0.0;
    }
    for e in g.edges() {
        d[e.u][e.v] = d[e.u][e.v].min(e.weight);
        d[e.v][e.u] = d[e.v][e.u].min(e.weight);
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Components of the threshold graph on `members` (pairs at distance at
/// most `r`), found by breadth-first search. Each component is sorted and
/// the list is ordered by smallest member.
pub fn threshold_components(dist: &[Vec<f64>], members: &[usize], r: f64) -> Vec<Vec<usize>> {
    let mut seen = vec![false; members.len()];
    let mut out = Vec::new();
    for s in 0..members.len() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut head = 0;
        while head < comp.len() {
            let a = comp[head];
            head += 1;
            for b in 0..members.len() {
                if !seen[b] && dist[members[a]][members[b]] <= r + EPS {
                    seen[b] = true;
                    comp.push(b);
                }
            }
        }
        let mut c: Vec<usize> = comp.into_iter().map(|i| members[i]).collect();
        c.sort_unstable();
        out.push(c);
    }
    out.sort();
    out
}

/// Smallest achievable largest r-component weak diameter over all ways of
/// splitting the vertices into `m` sets. Partitions suffice: shrinking a
/// cover of coverage 1 to a partition never grows a component.
pub fn oracle_min_bound(g: &WeightedGraph, m: usize, r: f64) -> Result<f64> {
    let n = g.vertex_count();
    if n > ORACLE_CAP {
        return Err(Error::SizeCap { size: n, cap: ORACLE_CAP });
    }
    if m == 0 {
        return Err(Error::InvalidInput("need at least one set".into()));
    }
    if n == 0 {
        return Ok(0.0);
    }
    let dist = floyd_warshall(g);
    // Colourings with vertex 0 fixed to colour 0; the rest range freely.
    let total = (m as u64).pow(n as u32 - 1);
    let best = (0..total)
        .into_par_iter()
        .map(|code| {
            let mut colour = vec![0usize; n];
            let mut c = code;
            for x in colour.iter_mut().skip(1) {
                *x = (c % m as u64) as usize;
                c /= m as u64;
            }
            let mut worst = 0.0f64;
            for k in 0..m {
                let members: Vec<usize> = (0..n).filter(|&v| colour[v] == k).collect();
                for comp in threshold_components(&dist, &members, r) {
                    for (i, &a) in comp.iter().enumerate() {
                        for &b in &comp[i + 1..] {
                            worst = worst.max(dist[a][b]);
                        }
                    }
                }
            }
            worst
        })
        .reduce(|| f64::INFINITY, f64::min);
    Ok(best)
}

/// `profile[r]` = largest ball `|B_r(v)|` over all vertices, for integer
/// radii `0..=r_max`.
pub fn oracle_growth(g: &WeightedGraph, r_max: usize) -> Vec<usize> {
    let n = g.vertex_count();
    (0..n)
        .into_par_iter()
        .map(|v| {
            let d = multi_source_distances(g, &[v], r_max as f64);
            let mut counts = vec![0usize; r_max + 1];
            for &x in d.iter().filter(|x| x.is_finite()) {
                let bucket = (x - EPS).ceil().max(0.0) as usize;
                if bucket <= r_max {
                    counts[bucket] += 1;
                }
            }
            for r in 1..=r_max {
                counts[r] += counts[r - 1];
            }
            counts
        })
        .reduce(
            || vec![0; r_max + 1],
            |a, b| a.into_iter().zip(b).map(|(x, y)| x.max(y)).collect(),
        )
}
