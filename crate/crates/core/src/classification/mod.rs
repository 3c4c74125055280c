//! Enumeration of the 2-dimensional orbit spaces that admit nonnegative curvature.
//!
//! Nothing here is a lookup table. Cases are produced by exhausting the
//! combinatorial possibilities (number of boundary arcs or cone points, and
//! the admissible corner angles) and pruning with two Gauss–Bonnet arguments:
//! the angle-sum test on geodesic triangles and the averaging bound for a fan
//! triangulation. Parametric families (the `(2,2,p)` cone triple, the
//! `(π/2,π/2,α)` triangle) are detected when the pruning test passes for every
//! value of the free slot, and are emitted as one symbolic record.

mod case;
mod table;

pub use case::*;
pub use table::{cases_to_csv, cases_to_json, TableLayout};

use num_rational::Ratio;

use crate::angle::{admissible_boundary_angles, BoundaryAngle, ConeAngle, PiMultiple};
use crate::error::{Error, Result};

/// Largest boundary-arc or cone-point count the enumerators try before
/// relying on the monotonicity of the averaging bounds.
const SEARCH_LIMIT: u32 = 8;

/// Gauss–Bonnet test for a geodesic triangle with principal interior.
///
/// Positive classes pass when the angle sum exceeds π; the flat class passes
/// only on exact equality with π.
pub fn angle_sum_test(angles: [PiMultiple; 3], class: CurvatureClass) -> bool {
    polygon_angle_sum_test(&angles, class)
}

/// [`angle_sum_test`] generalized to a geodesic `k`-gon, compared against `(k−2)π`.
pub fn polygon_angle_sum_test(angles: &[PiMultiple], class: CurvatureClass) -> bool {
    let k = angles.len() as i64;
    let flat_sum = PiMultiple::PI * (k - 2);
    let sum = PiMultiple::sum(angles.iter().copied());
    match class {
        CurvatureClass::Flat => sum == flat_sum,
        CurvatureClass::ConstantPositive | CurvatureClass::PositiveNonConstant => sum > flat_sum,
    }
}

/// Upper bound on the average triangle angle sum of the fan triangulation of
/// a polygon with `k` boundary arcs and corners at most π/2: `(π/2)·k/(k−2)`.
///
/// A configuration is excluded for positive curvature when this is `≤ π`,
/// and for nonnegative curvature when it is `< π`.
pub fn average_angle_argument(k: u32) -> Result<PiMultiple> {
    if k < 3 {
        return Err(Error::Domain(format!(
            "averaging needs at least 3 boundary arcs, got {k}"
        )));
    }
    Ok(PiMultiple::from_ratio(Ratio::new(
        k as i64,
        2 * (k as i64 - 2),
    )))
}

/// Average triangle angle sum for `k ≥ 3` cone points on a sphere joined into
/// a geodesic triangulation (`2k−4` triangles, each cone angle at most π):
/// `π·k/(2k−4)`.
pub fn cone_average_angle_argument(k: u32) -> Result<PiMultiple> {
    if k < 3 {
        return Err(Error::Domain(format!(
            "averaging needs at least 3 cone points, got {k}"
        )));
    }
    Ok(PiMultiple::from_ratio(Ratio::new(
        k as i64,
        2 * k as i64 - 4,
    )))
}

struct Ids(u32);

impl Ids {
    fn next(&mut self) -> u32 {
        self.0 += 1;
        self.0
    }
}

fn pi_over(n: u32) -> PiMultiple {
    PiMultiple::pi_over(n as i64)
}

fn cone(p: u32) -> ConeSlot {
    ConeSlot::Fixed(ConeAngle::new(p).expect("cone orders are generated ≥ 2"))
}

/// Tile count `4π / excess` of a spherical triangle, when it is an integer.
fn spherical_tile_count(angles: &[PiMultiple]) -> Option<u64> {
    let excess = PiMultiple::sum(angles.iter().copied()) - PiMultiple::PI;
    let count = Ratio::from_integer(4) / excess.ratio();
    count.is_integer().then(|| count.to_integer() as u64)
}

/// All orbit spaces admitting positive curvature.
pub fn enumerate_positive_cases() -> Vec<OrbitSpaceCase> {
    let mut ids = Ids(0);
    let mut out = Vec::new();
    empty_boundary_cases(&mut ids, &mut out);
    nonempty_boundary_cases(&mut ids, &mut out);
    out
}

fn empty_boundary_cases(ids: &mut Ids, out: &mut Vec<OrbitSpaceCase>) {
    for k in 0..=SEARCH_LIMIT {
        if k >= 3 && cone_average_angle_argument(k).unwrap() <= PiMultiple::PI {
            // Averaging bound is decreasing in k.
            break;
        }
        match k {
            0 => out.push(OrbitSpaceCase {
                case_id: ids.next(),
                boundary: vec![],
                cones: vec![],
                curvature_class: CurvatureClass::ConstantPositive,
                tiling: Some(TilingDescriptor {
                    target: TilingTarget::Sphere,
                    tile: TileShape::Sphere,
                    tile_count: TileCount::Finite(1),
                }),
            }),
            // A sphere with one or two cone points (teardrop, football) is
            // positively curved but carries no constant-curvature metric.
            1 => out.push(OrbitSpaceCase {
                case_id: ids.next(),
                boundary: vec![],
                cones: vec![ConeSlot::Free(Param::P)],
                curvature_class: CurvatureClass::PositiveNonConstant,
                tiling: None,
            }),
            2 => out.push(OrbitSpaceCase {
                case_id: ids.next(),
                boundary: vec![],
                cones: vec![ConeSlot::Free(Param::P), ConeSlot::Free(Param::Q)],
                curvature_class: CurvatureClass::PositiveNonConstant,
                tiling: None,
            }),
            3 => three_cone_cases(ids, out),
            _ => unreachable!("averaging excludes four or more cone points"),
        }
    }
}

/// Orders `p ≤ q ≤ r` whose triangle `(π/p, π/q, π/r)` is spherical; the
/// orbit space is that triangle's double.
fn three_cone_cases(ids: &mut Ids, out: &mut Vec<OrbitSpaceCase>) {
    let positive = CurvatureClass::ConstantPositive;
    let mut p = 2;
    while angle_sum_test([pi_over(p); 3], positive) {
        let mut q = p;
        while angle_sum_test([pi_over(p), pi_over(q), pi_over(q)], positive) {
            let fixed = pi_over(p) + pi_over(q);
            if fixed >= PiMultiple::PI {
                // Passes for every r: one symbolic record, tile count linear in r.
                debug_assert_eq!(fixed, PiMultiple::PI);
                out.push(OrbitSpaceCase {
                    case_id: ids.next(),
                    boundary: vec![],
                    cones: vec![cone(p), cone(q), ConeSlot::Free(Param::P)],
                    curvature_class: positive,
                    tiling: Some(TilingDescriptor {
                        target: TilingTarget::Sphere,
                        tile: TileShape::Polygon(vec![
                            TileAngle::Fixed(pi_over(p)),
                            TileAngle::Fixed(pi_over(q)),
                            TileAngle::PiOver(Param::P),
                        ]),
                        tile_count: TileCount::Linear {
                            factor: 4,
                            param: Param::P,
                        },
                    }),
                });
            } else {
                let mut r = q;
                while angle_sum_test([pi_over(p), pi_over(q), pi_over(r)], positive) {
                    let tile = vec![pi_over(p), pi_over(q), pi_over(r)];
                    let count = spherical_tile_count(&tile).expect("triangle group tiles S²");
                    out.push(OrbitSpaceCase {
                        case_id: ids.next(),
                        boundary: vec![],
                        cones: vec![cone(p), cone(q), cone(r)],
                        curvature_class: positive,
                        tiling: Some(TilingDescriptor {
                            target: TilingTarget::Sphere,
                            tile: TileShape::Polygon(
                                tile.into_iter().map(TileAngle::Fixed).collect(),
                            ),
                            tile_count: TileCount::Finite(count),
                        }),
                    });
                    r += 1;
                }
            }
            q += 1;
        }
        p += 1;
    }
}

fn nonempty_boundary_cases(ids: &mut Ids, out: &mut Vec<OrbitSpaceCase>) {
    for k in 1..=SEARCH_LIMIT {
        if k >= 3 && average_angle_argument(k).unwrap() <= PiMultiple::PI {
            break;
        }
        match k {
            1 => {
                out.push(OrbitSpaceCase {
                    case_id: ids.next(),
                    boundary: vec![AngleSlot::Fixed(BoundaryAngle::NO_VERTEX)],
                    cones: vec![],
                    curvature_class: CurvatureClass::ConstantPositive,
                    tiling: Some(TilingDescriptor {
                        target: TilingTarget::Sphere,
                        tile: TileShape::Hemisphere,
                        tile_count: TileCount::Finite(2),
                    }),
                });
                // Doubles to a teardrop.
                out.push(OrbitSpaceCase {
                    case_id: ids.next(),
                    boundary: vec![AngleSlot::Free(Param::Alpha)],
                    cones: vec![],
                    curvature_class: CurvatureClass::PositiveNonConstant,
                    tiling: None,
                });
            }
            // Doubles to a football.
            2 => out.push(OrbitSpaceCase {
                case_id: ids.next(),
                boundary: vec![AngleSlot::Free(Param::Alpha), AngleSlot::Free(Param::Beta)],
                cones: vec![],
                curvature_class: CurvatureClass::PositiveNonConstant,
                tiling: None,
            }),
            3 => boundary_triangles(ids, out, CurvatureClass::ConstantPositive),
            _ => unreachable!("averaging excludes four or more arcs"),
        }
    }
}

/// Corner triples `a ≥ b ≥ c` passing the angle-sum test for `class`. When a
/// leading pair `(a, b)` passes for every admissible `c ≤ b` (and there is
/// more than one such `c`), the triple is emitted as a family in `α = c`.
fn boundary_triangles(ids: &mut Ids, out: &mut Vec<OrbitSpaceCase>, class: CurvatureClass) {
    let angles: Vec<PiMultiple> = admissible_boundary_angles()
        .into_iter()
        .map(|a| a.angle())
        .collect();
    for (i, &a) in angles.iter().enumerate() {
        for (j, &b) in angles.iter().enumerate().skip(i) {
            let thirds = &angles[j..];
            let passing: Vec<PiMultiple> = thirds
                .iter()
                .copied()
                .filter(|&c| angle_sum_test([a, b, c], class))
                .collect();
            let fixed = |x: PiMultiple| AngleSlot::Fixed(BoundaryAngle::new(x).unwrap());
            let target = if class == CurvatureClass::Flat {
                TilingTarget::Plane
            } else {
                TilingTarget::Sphere
            };
            if passing.len() > 1 && passing.len() == thirds.len() {
                debug_assert_eq!(a + b, PiMultiple::PI);
                out.push(OrbitSpaceCase {
                    case_id: ids.next(),
                    boundary: vec![fixed(a), fixed(b), AngleSlot::Free(Param::Alpha)],
                    cones: vec![],
                    curvature_class: class,
                    tiling: Some(TilingDescriptor {
                        target,
                        tile: TileShape::Polygon(vec![
                            TileAngle::Fixed(a),
                            TileAngle::Fixed(b),
                            TileAngle::Free(Param::Alpha),
                        ]),
                        tile_count: TileCount::Linear {
                            factor: 4,
                            param: Param::Alpha,
                        },
                    }),
                });
                continue;
            }
            for c in passing {
                let tile = vec![a, b, c];
                let tile_count = match target {
                    TilingTarget::Sphere => TileCount::Finite(
                        spherical_tile_count(&tile).expect("triangle group tiles S²"),
                    ),
                    TilingTarget::Plane => TileCount::Infinite,
                };
                out.push(OrbitSpaceCase {
                    case_id: ids.next(),
                    boundary: vec![fixed(a), fixed(b), fixed(c)],
                    cones: vec![],
                    curvature_class: class,
                    tiling: Some(TilingDescriptor {
                        target,
                        tile: TileShape::Polygon(tile.into_iter().map(TileAngle::Fixed).collect()),
                        tile_count,
                    }),
                });
            }
        }
    }
}

/// All flat orbit spaces (numbered after the positive cases).
///
/// Only polygons with 3 or 4 arcs survive: more arcs fail the strict
/// averaging bound, an empty boundary cannot be flat, and one or two arcs
/// coincide with the positive-curvature records.
pub fn enumerate_flat_cases() -> Vec<OrbitSpaceCase> {
    let mut ids = Ids(enumerate_positive_cases().len() as u32);
    let mut out = Vec::new();
    let flat = CurvatureClass::Flat;
    for k in 3..=SEARCH_LIMIT {
        if average_angle_argument(k).unwrap() < PiMultiple::PI {
            break;
        }
        if k == 3 {
            boundary_triangles(&mut ids, &mut out, flat);
            continue;
        }
        for corners in multisets(&admissible_boundary_angles(), k as usize) {
            let angles: Vec<PiMultiple> = corners.iter().map(|a| a.angle()).collect();
            if polygon_angle_sum_test(&angles, flat) {
                out.push(OrbitSpaceCase {
                    case_id: ids.next(),
                    boundary: corners.iter().copied().map(AngleSlot::Fixed).collect(),
                    cones: vec![],
                    curvature_class: flat,
                    tiling: Some(TilingDescriptor {
                        target: TilingTarget::Plane,
                        tile: TileShape::Polygon(
                            angles.into_iter().map(TileAngle::Fixed).collect(),
                        ),
                        tile_count: TileCount::Infinite,
                    }),
                });
            }
        }
    }
    out
}

/// Positive cases followed by flat cases (ids 1–17).
pub fn enumerate_all_cases() -> Vec<OrbitSpaceCase> {
    let mut all = enumerate_positive_cases();
    all.extend(enumerate_flat_cases());
    all
}

/// Looks up a case record by id.
pub fn case_by_id(case_id: u32) -> Result<OrbitSpaceCase> {
    enumerate_all_cases()
        .into_iter()
        .find(|c| c.case_id == case_id)
        .ok_or_else(|| Error::Domain(format!("no orbit space with case id {case_id}")))
}

/// Concrete members of every case of `class` that has a tiling, families
/// expanded over their parameter windows.
pub fn tiled_instances(class: CurvatureClass) -> Vec<OrbitSpaceCase> {
    enumerate_all_cases()
        .into_iter()
        .filter(|c| c.curvature_class == class && c.has_tiling())
        .flat_map(|c| c.instances())
        .collect()
}

/// Non-increasing multisets of size `k`, in the order of `items`.
fn multisets<T: Copy>(items: &[T], k: usize) -> Vec<Vec<T>> {
    fn go<T: Copy>(items: &[T], k: usize, start: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            go(items, k, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, k, 0, &mut Vec::with_capacity(k), &mut out);
    out
}

#[cfg(test)]
mod tests;
