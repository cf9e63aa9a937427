//! Searching small graphs for a fat banana: two far-apart connected sets
//! joined by geodesics that stay far apart.

use asdim::banana::DEFAULT_BANANA_CAP;
use asdim::{detect_fat_banana, gen_cycle, gen_tree, DistanceOracle};

pub fn run_example() -> asdim::Result<()> {
    let c12 = gen_cycle(12);
    let w = detect_fat_banana(&c12, 2.0, 2, DEFAULT_BANANA_CAP)?.expect("a long cycle has one");
    println!("C12: A={:?} B={:?} via {} paths", w.set_a.as_slice(), w.set_b.as_slice(), w.paths.len());
    w.validate(&DistanceOracle::new(&c12)).expect("witness checks out");

    // trees have unique geodesics, so no two of them are far apart
    let t = gen_tree(5, 12);
    assert!(detect_fat_banana(&t, 2.0, 2, DEFAULT_BANANA_CAP)?.is_none());
    println!("tree: none");
    Ok(())
}

#[allow(dead_code)]
fn main() -> asdim::Result<()> {
    run_example()
}
