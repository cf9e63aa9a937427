//! Turning a cover into a colouring: each vertex takes the first set that
//! holds it, and monochromatic r-components stay within the cover's bound.

use asdim::{gen_grid, planar_cover, weak_diameter_coloring, DistanceOracle};

pub fn run_example() -> asdim::Result<()> {
    let (g, _) = gen_grid(&[10, 10])?;
    let oracle = DistanceOracle::new(&g);
    let c = planar_cover(&g, 2.0)?;
    let (colours, worst) = weak_diameter_coloring(&c, &oracle)?;
    let used = colours.iter().max().map_or(0, |m| m + 1);
    println!("{used} colours, worst monochromatic component {worst} (bound {})", c.certificate.claimed_bound);
    assert!(worst <= c.certificate.claimed_bound);
    Ok(())
}

#[allow(dead_code)]
fn main() -> asdim::Result<()> {
    run_example()
}
