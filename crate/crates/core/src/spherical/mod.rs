//! Spherical triangles and the reflection tilings of S² they generate.

mod geometry;
mod tiling;

pub use geometry::*;
pub use tiling::*;
