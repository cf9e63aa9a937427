//! Stitching slab covers into a global cover with a hand-written provider.
//! On a path every slab of the rooted distance is an interval, so handing
//! back copies of the slab is a valid answer with bound equal to its span.

use asdim::{gen_path, rooted_projection, stitch, verify_cover, DistanceOracle, SlabCover, SlabRequest};
use asdim::metric::Unreachable;
use asdim::{RealProjection, WeightedGraph};

fn copies(_: &WeightedGraph, _: &RealProjection, req: &SlabRequest) -> asdim::Result<SlabCover> {
    Ok(SlabCover { sets: vec![req.vertices.clone(); req.required_sets], bound: req.span_cap })
}

pub fn run_example() -> asdim::Result<()> {
    let g = gen_path(300);
    let f = rooted_projection(&g, 0, Unreachable::Error)?;
    let (cover, consts) = stitch(&g, &f, &copies, 3, 1, 2.0)?;
    println!("s2={} r2={} R2={} final bound {}", consts.s2, consts.r2, consts.big_r2, consts.final_bound);
    let rep = verify_cover(&cover, &DistanceOracle::new(&g));
    println!("observed {} with coverage {}", rep.max_component_diameter(), rep.min_coverage);
    assert!(rep.pass);
    Ok(())
}

#[allow(dead_code)]
fn main() -> asdim::Result<()> {
    run_example()
}
