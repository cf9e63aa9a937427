//! Covering a k-subdivision at scale (k+1)r and keeping only the original
//! vertices gives a cover of the original graph at scale r, with the bound
//! divided by k+1.

use asdim::{annulus_cover_components, gen_tree, verify_cover, Certificate, Cover, DistanceOracle};

pub fn run_example() -> asdim::Result<()> {
    let (k, r) = (3usize, 2.0);
    let g = gen_tree(21, 120);
    let h = g.subdivide_all(k);
    let scale = (k + 1) as f64;
    let on_h = annulus_cover_components(&h, scale * r, 2.0, 2, 2)?;
    let keep: Vec<bool> = (0..h.vertex_count()).map(|v| v < g.vertex_count()).collect();
    let cert = Certificate::new("subdivision", r, on_h.certificate.claimed_bound / scale, 1);
    let c = Cover::new(g.vertex_count(), on_h.restrict(&keep), cert)?;
    let rep = verify_cover(&c, &DistanceOracle::new(&g));
    println!("{} -> {} vertices; bound {} observed {}", g.vertex_count(), h.vertex_count(), c.certificate.claimed_bound, rep.max_component_diameter());
    assert!(rep.pass);
    Ok(())
}

#[allow(dead_code)]
fn main() -> asdim::Result<()> {
    run_example()
}
