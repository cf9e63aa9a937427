//! Brute force next to the constructions: the best bound any 2-set cover
//! of a small graph can reach, and ball growth of a stretched grid.

use asdim::{annulus_cover_components, gen_cycle, gen_grid, oracle_growth, oracle_min_bound, stretch, StretchParams};
use asdim::{verify_cover, DistanceOracle};

pub fn run_example() -> asdim::Result<()> {
    let g = gen_cycle(9);
    let best = oracle_min_bound(&g, 2, 1.0)?;
    let c = annulus_cover_components(&g, 1.0, 2.0, 2, 2)?;
    let got = verify_cover(&c, &DistanceOracle::new(&g)).max_component_diameter();
    println!("C9, two sets, r=1: best possible {best}, annulus cover {got}");
    assert!(best <= got);

    let (base, _) = gen_grid(&[3, 3])?;
    let h = stretch(&base, StretchParams { k: 6, p: 2 });
    let profile = oracle_growth(&h, 8);
    println!("stretched grid, {} vertices, |B_r| = {profile:?}", h.vertex_count());
    Ok(())
}

#[allow(dead_code)]
fn main() -> asdim::Result<()> {
    run_example()
}
