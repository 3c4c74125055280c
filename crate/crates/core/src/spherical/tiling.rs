use std::collections::{BTreeMap, VecDeque};
use std::f64::consts::PI;

use nalgebra::{Matrix3, Vector3};
use serde::Serialize;

use super::geometry::{triangle_from_angles, SphericalTriangle, UnitVector};
use crate::angle::PiMultiple;
use crate::classification::{OrbitSpaceCase, TileShape, TilingTarget};
use crate::error::{Error, Result};

/// Grid used for canonical vertex and matrix keys.
const KEY_GRID: f64 = 1e6;

/// Multiplier on the Gauss–Bonnet tile count giving the closure budget.
pub const DEFAULT_BUDGET_FACTOR: usize = 10;

fn quantize(x: f64) -> i64 {
    (x * KEY_GRID).round() as i64
}

pub type VertexKey = [i64; 3];
pub type TileKey = Vec<VertexKey>;
pub type MatrixKey = [i64; 9];

pub fn vertex_key(v: &UnitVector) -> VertexKey {
    v.to_array().map(quantize)
}

pub fn matrix_key(m: &Matrix3<f64>) -> MatrixKey {
    let mut k = [0i64; 9];
    for (slot, x) in k.iter_mut().zip(m.iter()) {
        *slot = quantize(*x);
    }
    k
}

/// The orbit space as a region of S².
#[derive(Debug, Clone, PartialEq)]
pub enum FundamentalRegion {
    /// The whole sphere; one tile.
    Sphere,
    /// The northern hemisphere, bounded by the equator.
    Hemisphere,
    Triangle(SphericalTriangle),
}

impl FundamentalRegion {
    pub fn area(&self) -> f64 {
        match self {
            FundamentalRegion::Sphere => 4.0 * PI,
            FundamentalRegion::Hemisphere => 2.0 * PI,
            FundamentalRegion::Triangle(t) => t.excess(),
        }
    }

    /// Unit normals of the mirror great circles bounding the region.
    pub fn mirror_normals(&self) -> Vec<UnitVector> {
        match self {
            FundamentalRegion::Sphere => vec![],
            FundamentalRegion::Hemisphere => vec![UnitVector::north()],
            FundamentalRegion::Triangle(t) => (0..3).map(|i| t.inward_normal(i)).collect(),
        }
    }

    /// Region for a concrete, sphere-tiling classification record.
    pub fn for_case(case: &OrbitSpaceCase) -> Result<FundamentalRegion> {
        let tiling = case.tiling.as_ref().ok_or(Error::NoTiling {
            case_id: case.case_id,
        })?;
        if tiling.target != TilingTarget::Sphere {
            return Err(Error::UnsupportedCase {
                case_id: case.case_id,
                reason: "flat case; it tiles the plane".into(),
            });
        }
        match &tiling.tile {
            TileShape::Sphere => Ok(FundamentalRegion::Sphere),
            TileShape::Hemisphere => Ok(FundamentalRegion::Hemisphere),
            TileShape::Polygon(_) => {
                let angles = tiling.tile_angles().ok_or_else(|| Error::UnsupportedCase {
                    case_id: case.case_id,
                    reason: "parametric family; instantiate it first".into(),
                })?;
                let [a, b, c] = angles[..] else {
                    return Err(Error::Domain(format!(
                        "case {} tile is not a triangle",
                        case.case_id
                    )));
                };
                Ok(FundamentalRegion::Triangle(triangle_from_angles(a, b, c)?))
            }
        }
    }
}

/// One image of the fundamental region.
#[derive(Debug, Clone, PartialEq)]
pub struct SphericalTile {
    /// Group element carrying the fundamental region onto this tile.
    pub transform: Matrix3<f64>,
    /// Corner images, in the fundamental triangle's vertex order (empty for
    /// the sphere and hemisphere regions).
    pub vertices: Vec<UnitVector>,
}

impl SphericalTile {
    fn apply(transform: Matrix3<f64>, region: &FundamentalRegion) -> SphericalTile {
        let vertices = match region {
            FundamentalRegion::Triangle(t) => t
                .vertices
                .iter()
                .map(|v| {
                    UnitVector::new(transform * v.as_vector()).expect("orthogonal image is nonzero")
                })
                .collect(),
            _ => vec![],
        };
        SphericalTile {
            transform,
            vertices,
        }
    }

    pub fn key(&self) -> TileKey {
        if self.vertices.is_empty() {
            // Hemisphere tiles are told apart by their pole image.
            return vec![vertex_key(
                &UnitVector::new(self.transform * Vector3::z()).unwrap(),
            )];
        }
        let mut k: TileKey = self.vertices.iter().map(vertex_key).collect();
        k.sort_unstable();
        k
    }
}

/// A finite tiling of S² by congruent images of a fundamental region, with
/// edge adjacency. Tile 0 is the fundamental tile.
#[derive(Debug, Clone)]
pub struct SphericalTiling {
    region: FundamentalRegion,
    tiles: Vec<SphericalTile>,
    adjacency: Vec<Vec<usize>>,
    index: BTreeMap<TileKey, usize>,
}

/// Reflection tiling generated by `region`, with the default closure budget.
pub fn tiling_for_region(region: &FundamentalRegion) -> Result<SphericalTiling> {
    match region {
        FundamentalRegion::Sphere => Ok(SphericalTiling::from_tiles(
            region.clone(),
            vec![SphericalTile::apply(Matrix3::identity(), region)],
            vec![vec![]],
        )),
        FundamentalRegion::Hemisphere => {
            let flip = Matrix3::from_diagonal(&Vector3::new(1.0, 1.0, -1.0));
            Ok(SphericalTiling::from_tiles(
                region.clone(),
                vec![
                    SphericalTile::apply(Matrix3::identity(), region),
                    SphericalTile::apply(flip, region),
                ],
                vec![vec![1], vec![0]],
            ))
        }
        FundamentalRegion::Triangle(t) => generate_tiling(t),
    }
}

/// Closes the fundamental triangle under its three edge reflections.
pub fn generate_tiling(fundamental: &SphericalTriangle) -> Result<SphericalTiling> {
    let expected = (4.0 * PI / fundamental.excess()).round() as usize;
    generate_tiling_with_budget(fundamental, DEFAULT_BUDGET_FACTOR * expected.max(1))
}

/// Breadth-first reflection closure, failing once more than `budget` tiles appear.
pub fn generate_tiling_with_budget(
    fundamental: &SphericalTriangle,
    budget: usize,
) -> Result<SphericalTiling> {
    for a in fundamental.angles {
        if a.submultiple_of_pi().is_none_or(|n| n < 2) {
            return Err(Error::Domain(format!(
                "corner angle {a} is not π/n with n ≥ 2; reflections do not close"
            )));
        }
    }
    let region = FundamentalRegion::Triangle(fundamental.clone());
    let first = SphericalTile::apply(Matrix3::identity(), &region);
    let mut index = BTreeMap::new();
    index.insert(first.key(), 0);
    let mut tiles = vec![first];
    let mut adjacency: Vec<Vec<usize>> = vec![vec![usize::MAX; 3]];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for edge in 0..3 {
            let v = &tiles[i].vertices;
            let (b, c) = (v[(edge + 1) % 3].as_vector(), v[(edge + 2) % 3].as_vector());
            let n = b.cross(c).normalize();
            let mirror = Matrix3::identity() - 2.0 * n * n.transpose();
            let image = SphericalTile::apply(mirror * tiles[i].transform, &region);
            let key = image.key();
            let j = match index.get(&key) {
                Some(&j) => j,
                None => {
                    if tiles.len() >= budget {
                        return Err(Error::NonClosing { budget });
                    }
                    let j = tiles.len();
                    index.insert(key, j);
                    tiles.push(image);
                    adjacency.push(vec![usize::MAX; 3]);
                    queue.push_back(j);
                    j
                }
            };
            adjacency[i][edge] = j;
        }
    }
    Ok(SphericalTiling {
        region,
        tiles,
        adjacency,
        index,
    })
}

impl SphericalTiling {
    fn from_tiles(
        region: FundamentalRegion,
        tiles: Vec<SphericalTile>,
        adjacency: Vec<Vec<usize>>,
    ) -> Self {
        let index = tiles
            .iter()
            .enumerate()
            .map(|(i, t)| (t.key(), i))
            .collect();
        SphericalTiling {
            region,
            tiles,
            adjacency,
            index,
        }
    }

    pub fn region(&self) -> &FundamentalRegion {
        &self.region
    }

    pub fn tiles(&self) -> &[SphericalTile] {
        &self.tiles
    }

    /// The number of tiles `c`, equal to the order of the generated group.
    pub fn tile_count(&self) -> usize {
        self.tiles.len()
    }

    /// Edge neighbours per tile; entry `e` of a triangle tile is across the side opposite vertex `e`.
    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adjacency
    }

    pub fn fundamental_index(&self) -> usize {
        0
    }

    pub fn tile_index(&self, key: &TileKey) -> Option<usize> {
        self.index.get(key).copied()
    }

    pub fn keys(&self) -> impl Iterator<Item = &TileKey> {
        self.index.keys()
    }

    pub fn group_elements(&self) -> impl Iterator<Item = &Matrix3<f64>> {
        self.tiles.iter().map(|t| &t.transform)
    }

    /// Reflections in the sides of the fundamental region.
    pub fn generators(&self) -> Vec<Matrix3<f64>> {
        self.region
            .mirror_normals()
            .iter()
            .map(|n| Matrix3::identity() - 2.0 * n.as_vector() * n.as_vector().transpose())
            .collect()
    }

    /// The triangle occupied by tile `i`, for triangle tilings.
    pub fn triangle(&self, i: usize) -> Option<SphericalTriangle> {
        match &self.region {
            FundamentalRegion::Triangle(t) => Some(SphericalTriangle {
                vertices: [
                    self.tiles[i].vertices[0],
                    self.tiles[i].vertices[1],
                    self.tiles[i].vertices[2],
                ],
                angles: t.angles,
            }),
            _ => None,
        }
    }

    /// Whether `x` lies in the open interior of tile `i`, at least `tol` from its boundary planes.
    pub fn tile_contains(&self, i: usize, x: &UnitVector, tol: f64) -> bool {
        match &self.region {
            FundamentalRegion::Sphere => true,
            FundamentalRegion::Hemisphere => {
                (self.tiles[i].transform * Vector3::z()).dot(x.as_vector()) > tol
            }
            FundamentalRegion::Triangle(_) => self.triangle(i).unwrap().contains(x, tol),
        }
    }

    /// The tile whose interior holds `x`, if `x` is off every mirror.
    pub fn locate(&self, x: &UnitVector, tol: f64) -> Option<usize> {
        (0..self.tiles.len()).find(|&i| self.tile_contains(i, x, tol))
    }

    /// Area of tile `i` from its measured geometry.
    pub fn tile_area(&self, i: usize) -> f64 {
        match &self.region {
            FundamentalRegion::Triangle(_) => self.triangle(i).unwrap().measured_excess(),
            r => r.area(),
        }
    }

    /// Sum of tile areas; equals 4π for a tiling of S².
    pub fn total_area(&self) -> f64 {
        (0..self.tiles.len()).map(|i| self.tile_area(i)).sum()
    }

    /// Number of tiles meeting each edge, keyed by the sorted vertex-key pair.
    pub fn edge_incidence(&self) -> BTreeMap<(VertexKey, VertexKey), usize> {
        let mut out = BTreeMap::new();
        for t in &self.tiles {
            let n = t.vertices.len();
            if n == 0 {
                continue;
            }
            for e in 0..n {
                let (a, b) = (
                    vertex_key(&t.vertices[e]),
                    vertex_key(&t.vertices[(e + 1) % n]),
                );
                *out.entry(if a <= b { (a, b) } else { (b, a) }).or_insert(0) += 1;
            }
        }
        out
    }

    /// Serializable view: deduplicated vertices, tiles as vertex-index lists.
    pub fn to_export(&self) -> TilingExport {
        let mut vertex_ids: BTreeMap<VertexKey, usize> = BTreeMap::new();
        let mut vertices = Vec::new();
        let tiles = self
            .tiles
            .iter()
            .map(|t| {
                t.vertices
                    .iter()
                    .map(|v| {
                        *vertex_ids.entry(vertex_key(v)).or_insert_with(|| {
                            vertices.push(v.to_array());
                            vertices.len() - 1
                        })
                    })
                    .collect()
            })
            .collect();
        let (kind, angles) = match &self.region {
            FundamentalRegion::Sphere => ("sphere", vec![]),
            FundamentalRegion::Hemisphere => ("hemisphere", vec![]),
            FundamentalRegion::Triangle(t) => ("triangle", t.angles.to_vec()),
        };
        TilingExport {
            region: kind,
            angles,
            vertices,
            tiles,
            adjacency: self.adjacency.clone(),
            fundamental_tile: self.fundamental_index(),
            group_order: self.tile_count(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_export()).expect("tiling export serializes")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TilingExport {
    pub region: &'static str,
    pub angles: Vec<PiMultiple>,
    pub vertices: Vec<[f64; 3]>,
    pub tiles: Vec<Vec<usize>>,
    pub adjacency: Vec<Vec<usize>>,
    pub fundamental_tile: usize,
    pub group_order: usize,
}

/// The closed orbit space obtained by gluing a region to its mirror image
/// along the boundary.
#[derive(Debug, Clone)]
pub struct DoubledSpace {
    /// The two sheets: the fundamental tile and its reflection.
    pub sheets: [SphericalTile; 2],
    /// Boundary edges along which the sheets are identified (triangle case).
    pub seam: Vec<[UnitVector; 2]>,
    /// Cone angles of the closed space, one per triangle corner.
    pub cone_angles: Vec<PiMultiple>,
    /// Total area of both sheets.
    pub area: f64,
    /// Tiles of the full S² tiling that downstream unfolding uses.
    pub tiling_tile_count: usize,
}

/// Doubles a triangle or hemisphere region. A triangle `(α, β, γ)` yields the
/// closed space with cone angles `(2α, 2β, 2γ)`; the hemisphere yields the
/// whole sphere.
pub fn double(region: &FundamentalRegion) -> Result<DoubledSpace> {
    let tiling = tiling_for_region(region)?;
    match region {
        FundamentalRegion::Sphere => Err(Error::Domain(
            "the sphere has no boundary to double along".into(),
        )),
        FundamentalRegion::Hemisphere => {
            let sheets = [tiling.tiles[0].clone(), tiling.tiles[1].clone()];
            Ok(DoubledSpace {
                sheets,
                seam: vec![],
                cone_angles: vec![],
                area: tiling.total_area(),
                tiling_tile_count: 2,
            })
        }
        FundamentalRegion::Triangle(t) => {
            let mirror = tiling.adjacency[0][0];
            let sheets = [tiling.tiles[0].clone(), tiling.tiles[mirror].clone()];
            let seam = (0..3)
                .map(|i| [t.vertices[(i + 1) % 3], t.vertices[(i + 2) % 3]])
                .collect();
            let cone_angles = t.angles.iter().map(|&a| a * 2).collect();
            let area = tiling.tile_area(0) + tiling.tile_area(mirror);
            Ok(DoubledSpace {
                sheets,
                seam,
                cone_angles,
                area,
                tiling_tile_count: tiling.tile_count(),
            })
        }
    }
}
