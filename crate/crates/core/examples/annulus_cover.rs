//! Annuli of a rooted distance on a random tree: two sets at q = p = 2,
//! then m = 3 sets with coverage 2.

use asdim::{annulus_cover, gen_tree, verify_cover, DistanceOracle};

pub fn run_example() -> asdim::Result<()> {
    let g = gen_tree(11, 400);
    let oracle = DistanceOracle::new(&g);
    for r in [1.0, 2.0, 4.0] {
        let c = annulus_cover(&g, 0, r, 2.0, 2, 2)?;
        let rep = verify_cover(&c, &oracle);
        println!(
            "r={r}: observed {} <= claimed {} ({})",
            rep.max_component_diameter(),
            c.certificate.claimed_bound,
            if rep.pass { "ok" } else { "FAIL" }
        );
        assert!(rep.pass);
    }
    let c = annulus_cover(&g, 0, 2.0, 2.0, 2, 3)?;
    let rep = verify_cover(&c, &oracle);
    println!("m=3: {} sets, min coverage {}", c.len(), rep.min_coverage);
    assert!(rep.pass && rep.min_coverage >= 2);
    Ok(())
}

#[allow(dead_code)]
fn main() -> asdim::Result<()> {
    run_example()
}
