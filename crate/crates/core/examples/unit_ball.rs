//! Unit-disk graph in the plane: three sets from the point positions alone.

use asdim::geometric::unit_ball_graph;
use asdim::{gen_unit_ball_points, unit_ball_cover, verify_cover, DistanceOracle};

pub fn run_example() -> asdim::Result<()> {
    let pts = gen_unit_ball_points(2, 250, 12.0, 2);
    let g = unit_ball_graph(&pts);
    let c = unit_ball_cover(&pts, 1.0)?;
    let rep = verify_cover(&c, &DistanceOracle::new(&g));
    println!("{} edges; bound {} observed {}", g.edge_count(), c.certificate.claimed_bound, rep.max_component_diameter());
    assert_eq!(c.len(), 3);
    assert!(rep.pass);
    Ok(())
}

#[allow(dead_code)]
fn main() -> asdim::Result<()> {
    run_example()
}
