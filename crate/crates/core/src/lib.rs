//! k-planar placements and packings of regular caterpillars on points in
//! convex position.
//!
//! Caterpillars are drawn with zig-zag drawings on `n` circle positions;
//! rotating copies by small offsets yields edge-disjoint packings whose
//! per-edge crossing counts are checked exactly by [`verify`] and
//! cross-checked against brute force in [`oracle`].

pub mod caterpillar;
pub mod error;
pub mod layout;
pub mod oracle;
pub mod packing;
pub mod render;
pub mod verify;

pub use caterpillar::{make_center_caterpillar, make_regular_caterpillar, placement_exists, Caterpillar};
pub use error::{Condition, Error, Result};
pub use layout::{rotate, zigzag_drawing, ConvexDrawing, Edge, Side, SlopeClass};
pub use packing::{
    halve_by_sides, pack_divisible, pack_mixed, place_copies, place_three_2planar, Checks,
    PackingLayout,
};
pub use verify::{crossing_counts, k_of, CrossingReport};
