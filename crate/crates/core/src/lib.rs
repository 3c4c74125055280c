//! Orbit spaces of cohomogeneity-two actions with nonnegative curvature.
//!
//! The crate walks the computational half of the ellipticity argument:
//!
//! * [`classification`] enumerates the admissible 2-dimensional orbit spaces
//!   from the boundary-angle lattice and Gauss–Bonnet averaging.
//! * [`spherical`] realizes the constant-curvature positive cases as spherical
//!   triangles and closes them under reflection into tilings of S².
//! * [`planar`] builds the flat cases as ring-indexed rhombus lattices.
//! * [`geodesic`] unfolds critical geodesics from a generic basepoint to the
//!   copies of a principal orbit and assigns Morse indices by crossing counts.
//! * [`bounds`] turns geodesic censuses into cell-count histograms and checks
//!   them against the linear (sphere) and quadratic (plane) growth bounds.
//! * [`pipeline`] chains the above for one case over several seeds.

pub mod angle;
pub mod bounds;
pub mod classification;
pub mod error;
pub mod geodesic;
pub mod pipeline;
pub mod planar;
pub mod spherical;
pub mod tolerance;

pub use angle::{BoundaryAngle, ConeAngle, PiMultiple};
pub use bounds::{BettiBoundReport, BoundKind, Verdict};
pub use classification::{CurvatureClass, OrbitSpaceCase, TileCount, TilingDescriptor};
pub use error::{Error, Result};
pub use geodesic::{GeodesicCensus, GeodesicRecord, IndexParams, MarkedConfiguration};
pub use pipeline::{run_pipeline, PipelineOptions, PipelineReport};
pub use planar::{PlanarPoint, PlanarRingTiling, RhombusTile};
pub use spherical::{SphericalTiling, SphericalTriangle, UnitVector};
pub use tolerance::Tolerance;
