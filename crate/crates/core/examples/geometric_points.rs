//! Four sets for a separated point set in R^3 with stretch 2, with the
//! per-level coverage ledger and base-case packing limits.

use asdim::geometric::geometric_cover_traced;
use asdim::{gen_separated_points, verify_cover, DistanceOracle};

pub fn run_example() -> asdim::Result<()> {
    let (g, emb) = gen_separated_points(4, 200, 3, 9.0, 2.0)?;
    let (c, trace) = geometric_cover_traced(&g, &emb, 1.0)?;
    for l in trace.levels.iter().take(4) {
        println!("free={} coverage {} >= {}", l.free, l.observed_coverage, l.required_coverage);
    }
    println!("{} base cases, {} over the packing limit", trace.bases.len(), trace.packing_violations().len());
    let rep = verify_cover(&c, &DistanceOracle::new(&g));
    assert_eq!(c.len(), 4);
    assert!(rep.pass && trace.packing_violations().is_empty());
    Ok(())
}

#[allow(dead_code)]
fn main() -> asdim::Result<()> {
    run_example()
}
