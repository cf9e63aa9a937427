//! The command-line flow end to end, in a scratch directory: generate a
//! grid, cover it at two scales, verify the written covers.

use asdim::cli::{main_with_args, EXIT_OK};

pub fn run_example() -> asdim::Result<()> {
    let dir = std::env::temp_dir().join(format!("asdim-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let graph = dir.join("grid.g");
    let g = graph.to_str().unwrap();

    assert_eq!(main_with_args(["asdim", "gen", "grid", "6", "6", "--out", g]), EXIT_OK);
    assert_eq!(main_with_args(["asdim", "cover", "--scheme", "planar", "--r", "1,2", "--verify", g]), EXIT_OK);
    let c1 = dir.join("grid.planar.r1.cover.json");
    let c2 = dir.join("grid.planar.r2.cover.json");
    let code = main_with_args(["asdim", "verify", "--csv", g, c1.to_str().unwrap(), c2.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> asdim::Result<()> {
    run_example()
}
