//! Sparse partitions of an interval graph: parts of diameter at most
//! 20r + 12, and every r-ball meets at most two parts.

use asdim::{chordal_scheme, gen_interval_graph, r_multiplicity, verify_cover, DistanceOracle};

pub fn run_example() -> asdim::Result<()> {
    let (g, _) = gen_interval_graph(3, 300, 3)?;
    let oracle = DistanceOracle::new(&g);
    for r in [1.0, 2.0] {
        let c = chordal_scheme(&g, r)?;
        let rep = verify_cover(&c, &oracle);
        println!(
            "r={r}: {} parts, largest {} (bound {}), multiplicity {}",
            c.len(),
            rep.max_set_diameter(),
            c.certificate.claimed_bound,
            r_multiplicity(&c, &oracle, r)
        );
        assert!(rep.pass);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> asdim::Result<()> {
    run_example()
}
