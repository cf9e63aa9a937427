//! Bounded-pathwidth partition with its trace: levels, sections and the
//! cluster invariants rechecked from distances.

use asdim::pathwidth::pw_cover_traced;
use asdim::{gen_interval_graph, verify_cover, DistanceOracle};

pub fn run_example() -> asdim::Result<()> {
    let (g, pd) = gen_interval_graph(8, 400, 2)?;
    let oracle = DistanceOracle::new(&g);
    let (c, trace) = pw_cover_traced(&g, &pd, 1.0)?;
    println!(
        "width {} depth {} parts {} bound {:.3e}",
        pd.width(),
        trace.levels.depth(),
        c.len(),
        c.certificate.claimed_bound
    );
    let inv = trace.check_invariants(&oracle);
    assert!(inv.is_clean(), "{inv:?}");
    assert!(verify_cover(&c, &oracle).pass);
    Ok(())
}

#[allow(dead_code)]
fn main() -> asdim::Result<()> {
    run_example()
}
