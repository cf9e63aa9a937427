//! The planar pipeline on a grid, printed as a sweep over r.

use asdim::{gen_grid, planar_cover, verify_cover, DistanceOracle, SweepRow};

pub fn run_example() -> asdim::Result<()> {
    let (g, _) = gen_grid(&[12, 12])?;
    let oracle = DistanceOracle::new(&g);
    println!("{}", SweepRow::HEADER);
    for r in [1.0, 2.0, 4.0] {
        let c = planar_cover(&g, r)?;
        let rep = verify_cover(&c, &oracle);
        println!("{}", SweepRow::new(&g, &c, &rep).to_csv());
        assert_eq!(c.len(), 3);
        assert!(rep.pass);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> asdim::Result<()> {
    run_example()
}
