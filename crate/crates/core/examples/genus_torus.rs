//! A torus grid has Euler genus 2, so it excludes K_{3,7}.

use asdim::{gen_torus_grid, genus_cover, verify_cover, DistanceOracle};

pub fn run_example() -> asdim::Result<()> {
    let g = gen_torus_grid(&[10, 10])?;
    let c = genus_cover(&g, 2, 1.0)?;
    let rep = verify_cover(&c, &DistanceOracle::new(&g));
    println!(
        "p={} bound {} observed {} pass={}",
        c.certificate.param("p").unwrap_or(0.0),
        c.certificate.claimed_bound,
        rep.max_component_diameter(),
        rep.pass
    );
    assert!(rep.pass);
    Ok(())
}

#[allow(dead_code)]
fn main() -> asdim::Result<()> {
    run_example()
}
