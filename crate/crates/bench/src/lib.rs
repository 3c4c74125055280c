//! Fixtures shared by the criterion benches.

use orbifold_core::classification::case_by_id;
use orbifold_core::planar::{build_rings, fundamental_rhombus, PlanarRingTiling};
use orbifold_core::spherical::{
    generate_tiling, triangle_from_angles, SphericalTiling, SphericalTriangle,
};
use orbifold_core::PiMultiple;

/// The `(π/2, π/3, π/5)` triangle, whose tiling has 120 tiles.
pub fn icosahedral_triangle() -> SphericalTriangle {
    triangle_from_angles(
        PiMultiple::pi_over(2),
        PiMultiple::pi_over(3),
        PiMultiple::pi_over(5),
    )
    .expect("spherical")
}

pub fn icosahedral_tiling() -> SphericalTiling {
    generate_tiling(&icosahedral_triangle()).expect("closes")
}

/// Rings of a flat case through `n`.
pub fn flat_rings(case_id: u32, n: u32) -> PlanarRingTiling {
    let case = case_by_id(case_id).expect("known case");
    build_rings(&fundamental_rhombus(&case).expect("flat case"), n)
}
