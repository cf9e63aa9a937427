//! Runs every example in-process.

#[allow(dead_code)]
#[path = "../examples/annulus_cover.rs"]
mod annulus_cover;
#[allow(dead_code)]
#[path = "../examples/chordal_partition.rs"]
mod chordal_partition;
#[allow(dead_code)]
#[path = "../examples/cli_workflow.rs"]
mod cli_workflow;
#[allow(dead_code)]
#[path = "../examples/coloring.rs"]
mod coloring;
#[allow(dead_code)]
#[path = "../examples/fat_banana.rs"]
mod fat_banana;
#[allow(dead_code)]
#[path = "../examples/genus_torus.rs"]
mod genus_torus;
#[allow(dead_code)]
#[path = "../examples/geometric_points.rs"]
mod geometric_points;
#[allow(dead_code)]
#[path = "../examples/graph_basics.rs"]
mod graph_basics;
#[allow(dead_code)]
#[path = "../examples/oracles.rs"]
mod oracles;
#[allow(dead_code)]
#[path = "../examples/pathwidth_partition.rs"]
mod pathwidth_partition;
#[allow(dead_code)]
#[path = "../examples/planar_grid.rs"]
mod planar_grid;
#[allow(dead_code)]
#[path = "../examples/stitching.rs"]
mod stitching;
#[allow(dead_code)]
#[path = "../examples/subdivision.rs"]
mod subdivision;
#[allow(dead_code)]
#[path = "../examples/unit_ball.rs"]
mod unit_ball;

#[test]
fn annulus_cover_runs() {
    annulus_cover::run_example().unwrap();
}

#[test]
fn chordal_partition_runs() {
    chordal_partition::run_example().unwrap();
}

#[test]
fn cli_workflow_runs() {
    cli_workflow::run_example().unwrap();
}

#[test]
fn coloring_runs() {
    coloring::run_example().unwrap();
}

#[test]
fn fat_banana_runs() {
    fat_banana::run_example().unwrap();
}

#[test]
fn genus_torus_runs() {
    genus_torus::run_example().unwrap();
}

#[test]
fn geometric_points_runs() {
    geometric_points::run_example().unwrap();
}

#[test]
fn graph_basics_runs() {
    graph_basics::run_example().unwrap();
}

#[test]
fn oracles_runs() {
    oracles::run_example().unwrap();
}

#[test]
fn pathwidth_partition_runs() {
    pathwidth_partition::run_example().unwrap();
}

#[test]
fn planar_grid_runs() {
    planar_grid::run_example().unwrap();
}

#[test]
fn stitching_runs() {
    stitching::run_example().unwrap();
}

#[test]
fn subdivision_runs() {
    subdivision::run_example().unwrap();
}

#[test]
fn unit_ball_runs() {
    unit_ball::run_example().unwrap();
}
