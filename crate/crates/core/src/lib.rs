//! Covers of graph metrics with certified bounds.
//!
//! Every constructor returns a [`Cover`] carrying a [`Certificate`] (the
//! diameter bound, coverage and, for sparse partitions, multiplicity it
//! claims), and [`verify_cover`] re-derives each of those claims from exact
//! shortest-path distances. Schemes:
//!
//! - [`annulus_cover`]: annuli of a rooted distance, for graphs without fat bananas
//! - [`k3p_cover`], [`planar_cover`], [`genus_cover`]: three sets, via slab stitching
//! - [`chordal_scheme`] and [`pw_cover`]: sparse partitions (multiplicity 2)
//! - [`geometric_cover`], [`unit_ball_cover`]: `d + 1` sets from a point embedding
//!
//! ```
//! use asdim::{gen_grid, planar_cover, verify_cover, DistanceOracle};
//!
//! let (g, _) = gen_grid(&[6, 6]).unwrap();
//! let cover = planar_cover(&g, 1.0).unwrap();
//! assert_eq!(cover.len(), 3);
//! assert!(verify_cover(&cover, &DistanceOracle::new(&g)).pass);
//! ```

// `!(x > 0.0)` is how NaN gets rejected along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cover;
pub mod error;
pub mod graph;
pub mod metric;

pub mod banana;
pub mod stitch;
pub mod pipelines;
pub mod pathwidth;
pub mod geometric;

pub mod generators;
pub mod oracles;

pub mod cli;

pub use banana::{annulus_cover, annulus_cover_components, detect_fat_banana, AnnulusDecomposition, BananaWitness};
pub use cover::{
    cover_to_partition, r_multiplicity, verify_cover, weak_diameter_coloring, Certificate, Cover, SweepRow,
    VerificationReport,
};
pub use error::{Error, Result};
pub use generators::{
    gen_cycle, gen_grid, gen_interval_graph, gen_path, gen_separated_points, gen_torus_grid, gen_tree,
    gen_unit_ball_points, stretch, StretchParams,
};
pub use geometric::{geometric_cover, unit_ball_cover, Embedding, EmbeddingMode};
pub use graph::{VertexSet, WeightedGraph, EPS};
pub use metric::{r_components, rooted_projection, weak_diameter, DistanceOracle, RealProjection};
pub use oracles::{oracle_growth, oracle_min_bound};
pub use pathwidth::{pw_cover, PathDecomposition};
pub use pipelines::{chordal_scheme, genus_cover, k3p_cover, planar_cover};
pub use stitch::{stitch, LineCover, SlabCover, SlabRequest};
