//! Flat orbit spaces as ring-indexed rhombus lattices.
//!
//! Each flat case is normalized to a square or 60°/120° rhombus made of at
//! most four copies of the fundamental polygon. Rhombi are indexed by lattice
//! coordinates `(i, j)` and grouped into square rings `max(|i|, |j|) = n`.
//! The wallpaper group is generated by reflections in the sides of the
//! fundamental polygon; images are produced breadth-first and kept only while
//! they fall inside the requested rings.

use std::collections::{BTreeMap, VecDeque};

use nalgebra::{Matrix2, Vector2};
use serde::{Serialize, Serializer};

use crate::angle::PiMultiple;
use crate::classification::{CurvatureClass, OrbitSpaceCase};
use crate::error::{Error, Result};

const KEY_GRID: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanarPoint(pub Vector2<f64>);

impl PlanarPoint {
    pub fn new(x: f64, y: f64) -> Self {
        PlanarPoint(Vector2::new(x, y))
    }

    pub fn x(&self) -> f64 {
        self.0.x
    }

    pub fn y(&self) -> f64 {
        self.0.y
    }

    pub fn to_array(&self) -> [f64; 2] {
        [self.0.x, self.0.y]
    }

    fn key(&self) -> [i64; 2] {
        [
            (self.0.x * KEY_GRID).round() as i64,
            (self.0.y * KEY_GRID).round() as i64,
        ]
    }
}

impl Serialize for PlanarPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_array().serialize(s)
    }
}

/// `x ↦ linear·x + translation` with orthogonal `linear`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneIsometry {
    pub linear: Matrix2<f64>,
    pub translation: Vector2<f64>,
}

impl PlaneIsometry {
    pub fn identity() -> Self {
        PlaneIsometry {
            linear: Matrix2::identity(),
            translation: Vector2::zeros(),
        }
    }

    /// Reflection in the line through `a` and `b`.
    pub fn reflection(a: &Vector2<f64>, b: &Vector2<f64>) -> Self {
        let d = (b - a).normalize();
        let n = Vector2::new(-d.y, d.x);
        let linear = Matrix2::identity() - 2.0 * n * n.transpose();
        PlaneIsometry {
            linear,
            translation: 2.0 * n.dot(a) * n,
        }
    }

    pub fn apply(&self, p: &PlanarPoint) -> PlanarPoint {
        PlanarPoint(self.linear * p.0 + self.translation)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &PlaneIsometry) -> PlaneIsometry {
        PlaneIsometry {
            linear: self.linear * other.linear,
            translation: self.linear * other.translation + self.translation,
        }
    }

    pub fn inverse(&self) -> PlaneIsometry {
        let inv = self.linear.transpose();
        PlaneIsometry {
            linear: inv,
            translation: -(inv * self.translation),
        }
    }

    pub fn is_orientation_preserving(&self) -> bool {
        self.linear.determinant() > 0.0
    }
}

/// One rhombus of the ring decomposition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RhombusTile {
    pub vertices: [PlanarPoint; 4],
    pub ring_index: u32,
    pub lattice_coords: (i64, i64),
}

impl RhombusTile {
    pub fn area(&self) -> f64 {
        polygon_area(&self.vertices.map(|p| p.0))
    }

    pub fn side_lengths(&self) -> [f64; 4] {
        std::array::from_fn(|k| (self.vertices[(k + 1) % 4].0 - self.vertices[k].0).norm())
    }

    /// Interior angles in radians.
    pub fn angles(&self) -> [f64; 4] {
        std::array::from_fn(|k| {
            let v = self.vertices[k].0;
            let a = self.vertices[(k + 3) % 4].0 - v;
            let b = self.vertices[(k + 1) % 4].0 - v;
            a.perp(&b).abs().atan2(a.dot(&b))
        })
    }
}

pub fn ring_of(coords: (i64, i64)) -> u32 {
    coords.0.unsigned_abs().max(coords.1.unsigned_abs()) as u32
}

fn polygon_area(vertices: &[Vector2<f64>]) -> f64 {
    let n = vertices.len();
    (0..n)
        .map(|k| vertices[k].perp(&vertices[(k + 1) % n]))
        .sum::<f64>()
        .abs()
        / 2.0
}

/// The fundamental polygon of a flat case inside its ring-0 rhombus.
#[derive(Debug, Clone, PartialEq)]
pub struct FundamentalRhombus {
    pub case_id: u32,
    /// Fundamental polygon; corner `k` carries `domain_angles[k]`.
    pub domain: Vec<Vector2<f64>>,
    pub domain_angles: Vec<PiMultiple>,
    pub tile: RhombusTile,
    /// Lattice basis; tile `(i, j)` is the ring-0 rhombus shifted by `i·e₁ + j·e₂`.
    pub basis: [Vector2<f64>; 2],
    /// Copies of the fundamental polygon per rhombus.
    pub copies_per_tile: usize,
}

impl FundamentalRhombus {
    pub fn domain_area(&self) -> f64 {
        polygon_area(&self.domain)
    }

    /// Edge segments of the fundamental polygon.
    pub fn domain_edges(&self) -> Vec<(Vector2<f64>, Vector2<f64>)> {
        let n = self.domain.len();
        (0..n)
            .map(|k| (self.domain[k], self.domain[(k + 1) % n]))
            .collect()
    }

    /// Distance from `q` to the nearest side line of the fundamental polygon,
    /// negative when `q` is outside.
    pub fn interior_margin(&self, q: &PlanarPoint) -> f64 {
        let n = self.domain.len();
        let orientation = (0..n)
            .map(|k| self.domain[k].perp(&self.domain[(k + 1) % n]))
            .sum::<f64>()
            .signum();
        self.domain_edges()
            .iter()
            .map(|(a, b)| orientation * (b - a).normalize().perp(&(q.0 - a)))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn lattice_coords(&self, p: &Vector2<f64>) -> (i64, i64) {
        let m = Matrix2::from_columns(&self.basis);
        let ab = m.try_inverse().expect("basis is independent") * p;
        (ab.x.floor() as i64, ab.y.floor() as i64)
    }

    fn tile_at(&self, (i, j): (i64, i64)) -> RhombusTile {
        let shift = self.basis[0] * i as f64 + self.basis[1] * j as f64;
        RhombusTile {
            vertices: self.tile.vertices.map(|v| PlanarPoint(v.0 + shift)),
            ring_index: ring_of((i, j)),
            lattice_coords: (i, j),
        }
    }

    /// Normalized vertex-weighted point of the fundamental polygon.
    pub fn point_from_weights(&self, w: &[f64]) -> PlanarPoint {
        let total: f64 = w.iter().sum();
        let p = self
            .domain
            .iter()
            .zip(w)
            .map(|(v, wk)| v * (*wk / total))
            .sum();
        PlanarPoint(p)
    }
}

/// Normalizes a flat case (ids 14–17) to its square or rhombus.
///
/// * 17: the unit square is its own tile.
/// * 16: the equilateral triangle doubled across a side gives a 60°/120° rhombus.
/// * 15: the `(π/2, π/4, π/4)` triangle reflected in its hypotenuse gives the unit square.
/// * 14: the `(π/2, π/3, π/6)` triangle reflected in its long leg gives the
///   equilateral triangle, which then doubles as in case 16.
pub fn fundamental_rhombus(case: &OrbitSpaceCase) -> Result<FundamentalRhombus> {
    if case.curvature_class != CurvatureClass::Flat {
        return Err(Error::Domain(format!("case {} is not flat", case.case_id)));
    }
    let angles = case
        .tiling
        .as_ref()
        .and_then(|t| t.tile_angles())
        .ok_or_else(|| Error::Domain(format!("case {} has no concrete tile", case.case_id)))?;
    let h = 3f64.sqrt() / 2.0;
    let v = Vector2::new;
    let square = [v(0.0, 0.0), v(1.0, 0.0), v(1.0, 1.0), v(0.0, 1.0)];
    let rhombus = [v(0.0, 0.0), v(1.0, 0.0), v(1.5, h), v(0.5, h)];
    let [d2, d3, d4, d6] = [2, 3, 4, 6].map(PiMultiple::pi_over);
    let (domain, corners) = if angles == [d2, d2, d2, d2] {
        (square.to_vec(), square)
    } else if angles == [d2, d4, d4] {
        (vec![v(0.0, 0.0), v(1.0, 0.0), v(0.0, 1.0)], square)
    } else if angles == [d3, d3, d3] {
        (vec![v(0.0, 0.0), v(1.0, 0.0), v(0.5, h)], rhombus)
    } else if angles == [d2, d3, d6] {
        (vec![v(0.5, 0.0), v(0.0, 0.0), v(0.5, h)], rhombus)
    } else {
        return Err(Error::Domain(format!(
            "flat tile {angles:?} has no rhombus normalization"
        )));
    };
    let tile = RhombusTile {
        vertices: corners.map(PlanarPoint),
        ring_index: 0,
        lattice_coords: (0, 0),
    };
    let basis = [corners[1] - corners[0], corners[3] - corners[0]];
    let copies = (tile.area() / polygon_area(&domain)).round() as usize;
    Ok(FundamentalRhombus {
        case_id: case.case_id,
        domain,
        domain_angles: angles,
        tile,
        basis,
        copies_per_tile: copies,
    })
}

/// Parallel mirror lines `{x : n·x = offset + k·spacing, k ∈ ℤ}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MirrorFamily {
    pub normal: [f64; 2],
    pub offset: f64,
    pub spacing: f64,
}

impl MirrorFamily {
    pub fn normal(&self) -> Vector2<f64> {
        Vector2::new(self.normal[0], self.normal[1])
    }

    /// Position of `p` in units of the spacing; mirrors sit at integers.
    pub fn coordinate(&self, p: &Vector2<f64>) -> f64 {
        (self.normal().dot(p) - self.offset) / self.spacing
    }
}

/// An image `g(D)` of the fundamental polygon.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainImage {
    pub map: PlaneIsometry,
    pub lattice_coords: (i64, i64),
}

#[derive(Debug, Clone)]
pub struct PlanarRingTiling {
    pub fundamental: FundamentalRhombus,
    pub n_max: u32,
    pub tiles: BTreeMap<(i64, i64), RhombusTile>,
    /// Images of the fundamental polygon in rings `0..=n_max`; entry 0 is the identity.
    pub images: Vec<DomainImage>,
    pub mirror_families: Vec<MirrorFamily>,
}

fn image_key(map: &PlaneIsometry, domain: &[Vector2<f64>]) -> Vec<[i64; 2]> {
    let mut k: Vec<[i64; 2]> = domain
        .iter()
        .map(|v| map.apply(&PlanarPoint(*v)).key())
        .collect();
    k.sort_unstable();
    k
}

/// Reflection images of the fundamental polygon whose centroid lies in rings `0..=n_max`.
fn domain_images(fundamental: &FundamentalRhombus, n_max: u32) -> Vec<DomainImage> {
    let domain = &fundamental.domain;
    let centroid = domain.iter().sum::<Vector2<f64>>() / domain.len() as f64;
    let first = DomainImage {
        map: PlaneIsometry::identity(),
        lattice_coords: fundamental.lattice_coords(&centroid),
    };
    let mut seen = BTreeMap::new();
    seen.insert(image_key(&first.map, domain), 0usize);
    let mut images = vec![first];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let g = images[i].map;
        for k in 0..domain.len() {
            let a = g.apply(&PlanarPoint(domain[k])).0;
            let b = g.apply(&PlanarPoint(domain[(k + 1) % domain.len()])).0;
            let map = PlaneIsometry::reflection(&a, &b).compose(&g);
            let key = image_key(&map, domain);
            if seen.contains_key(&key) {
                continue;
            }
            let coords = fundamental.lattice_coords(&map.apply(&PlanarPoint(centroid)).0);
            if ring_of(coords) > n_max {
                continue;
            }
            seen.insert(key, images.len());
            images.push(DomainImage {
                map,
                lattice_coords: coords,
            });
            queue.push_back(images.len() - 1);
        }
    }
    images
}

/// Groups the sides of the given images into parallel families of equally spaced mirrors.
fn mirror_families(fundamental: &FundamentalRhombus, images: &[DomainImage]) -> Vec<MirrorFamily> {
    let mut groups: BTreeMap<[i64; 2], (Vector2<f64>, Vec<f64>)> = BTreeMap::new();
    for img in images {
        for (a, b) in fundamental.domain_edges() {
            let a = img.map.apply(&PlanarPoint(a)).0;
            let b = img.map.apply(&PlanarPoint(b)).0;
            let d = (b - a).normalize();
            let mut n = Vector2::new(-d.y, d.x);
            if n.y < -1e-12 || (n.y.abs() <= 1e-12 && n.x < 0.0) {
                n = -n;
            }
            let key = PlanarPoint(n).key();
            groups.entry(key).or_insert((n, vec![])).1.push(n.dot(&a));
        }
    }
    groups
        .into_values()
        .map(|(normal, mut offsets)| {
            offsets.sort_by(f64::total_cmp);
            offsets.dedup_by(|a, b| (*a - *b).abs() < 1e-7);
            let spacing = offsets
                .windows(2)
                .map(|w| w[1] - w[0])
                .fold(f64::INFINITY, f64::min);
            assert!(
                spacing.is_finite(),
                "each mirror direction recurs within two rings"
            );
            let offset = offsets[0].rem_euclid(spacing);
            debug_assert!(offsets.iter().all(|c| {
                let k = (c - offset) / spacing;
                (k - k.round()).abs() < 1e-6
            }));
            MirrorFamily {
                normal: [normal.x, normal.y],
                offset,
                spacing,
            }
        })
        .collect()
}

/// All rhombi with `max(|i|, |j|) ≤ n_max`, plus the fundamental-polygon
/// images they contain.
pub fn build_rings(fundamental: &FundamentalRhombus, n_max: u32) -> PlanarRingTiling {
    let n = n_max as i64;
    let tiles = (-n..=n)
        .flat_map(|i| (-n..=n).map(move |j| (i, j)))
        .map(|c| (c, fundamental.tile_at(c)))
        .collect();
    let family_images = domain_images(fundamental, n_max.max(2));
    let mirror_families = mirror_families(fundamental, &family_images);
    let images = if n_max >= 2 {
        family_images
    } else {
        family_images
            .into_iter()
            .filter(|img| ring_of(img.lattice_coords) <= n_max)
            .collect()
    };
    PlanarRingTiling {
        fundamental: fundamental.clone(),
        n_max,
        tiles,
        images,
        mirror_families,
    }
}

/// One image of the marked point `q`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitCopy {
    pub point: PlanarPoint,
    pub lattice_coords: (i64, i64),
    pub ring: u32,
    /// Index into [`PlanarRingTiling::images`] of the group element producing this copy.
    pub image: usize,
}

impl PlanarRingTiling {
    pub fn tiles_in_ring(&self, n: u32) -> usize {
        self.tiles.values().filter(|t| t.ring_index == n).count()
    }

    pub fn tile_count_through(&self, n: u32) -> usize {
        self.tiles.values().filter(|t| t.ring_index <= n).count()
    }

    /// Sum of tile areas through ring `n`.
    pub fn area_through(&self, n: u32) -> f64 {
        self.tiles
            .values()
            .filter(|t| t.ring_index <= n)
            .map(RhombusTile::area)
            .sum()
    }

    /// Whether `p` lies within `tol` of a mirror line.
    pub fn on_mirror(&self, p: &Vector2<f64>, tol: f64) -> bool {
        self.mirror_families.iter().any(|f| {
            let s = f.coordinate(p);
            (s - s.round()).abs() * f.spacing < tol
        })
    }

    /// Images of `q` in rings `0..=n_max`, ordered by image index.
    pub fn point_orbit_in_rings(
        &self,
        q: &PlanarPoint,
        n_max: u32,
        tol: f64,
    ) -> Result<Vec<OrbitCopy>> {
        point_orbit_in_rings(q, self, n_max, tol)
    }

    pub fn to_export(&self) -> PlanarExport {
        let mut rings: Vec<Vec<RhombusTile>> = vec![vec![]; self.n_max as usize + 1];
        for t in self.tiles.values() {
            rings[t.ring_index as usize].push(t.clone());
        }
        PlanarExport {
            case_id: self.fundamental.case_id,
            fundamental_polygon: self.fundamental.domain.iter().map(|v| [v.x, v.y]).collect(),
            lattice_basis: self.fundamental.basis.map(|v| [v.x, v.y]),
            copies_per_tile: self.fundamental.copies_per_tile,
            mirror_families: self.mirror_families.clone(),
            rings,
            point_orbit: None,
        }
    }

    /// Export including the orbit of `q` through all built rings.
    pub fn to_export_with_orbit(&self, q: &PlanarPoint, tol: f64) -> Result<PlanarExport> {
        let orbit = self.point_orbit_in_rings(q, self.n_max, tol)?;
        Ok(PlanarExport {
            point_orbit: Some(orbit),
            ..self.to_export()
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PlanarExport {
    pub case_id: u32,
    pub fundamental_polygon: Vec<[f64; 2]>,
    pub lattice_basis: [[f64; 2]; 2],
    pub copies_per_tile: usize,
    pub mirror_families: Vec<MirrorFamily>,
    pub rings: Vec<Vec<RhombusTile>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point_orbit: Option<Vec<OrbitCopy>>,
}

/// All images of the principal point `q` landing in rings `0..=n_max`.
pub fn point_orbit_in_rings(
    q: &PlanarPoint,
    tiling: &PlanarRingTiling,
    n_max: u32,
    tol: f64,
) -> Result<Vec<OrbitCopy>> {
    if n_max > tiling.n_max {
        return Err(Error::Domain(format!(
            "rings built through {} only, asked for {n_max}",
            tiling.n_max
        )));
    }
    let margin = tiling.fundamental.interior_margin(q);
    if margin <= tol || tiling.on_mirror(&q.0, tol) {
        return Err(Error::NonGeneric(format!(
            "marked point ({}, {}) is not interior to the fundamental polygon",
            q.x(),
            q.y()
        )));
    }
    Ok(tiling
        .images
        .iter()
        .enumerate()
        .filter(|(_, img)| ring_of(img.lattice_coords) <= n_max)
        .map(|(k, img)| OrbitCopy {
            point: img.map.apply(q),
            lattice_coords: img.lattice_coords,
            ring: ring_of(img.lattice_coords),
            image: k,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classification::case_by_id;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn rhombus(id: u32) -> FundamentalRhombus {
        fundamental_rhombus(&case_by_id(id).unwrap()).unwrap()
    }

    #[test]
    fn copies_per_tile() {
        assert_eq!(rhombus(17).copies_per_tile, 1);
        assert_eq!(rhombus(16).copies_per_tile, 2);
        assert_eq!(rhombus(15).copies_per_tile, 2);
        assert_eq!(rhombus(14).copies_per_tile, 4);
        let r16 = rhombus(16).tile.angles();
        assert_abs_diff_eq!(r16[0], PI / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r16[1], 2.0 * PI / 3.0, epsilon = 1e-12);
        assert!(fundamental_rhombus(&case_by_id(6).unwrap()).is_err());
    }

    #[test]
    fn domain_corners_match_declared_angles() {
        for id in 14..=17 {
            let f = rhombus(id);
            let n = f.domain.len();
            for k in 0..n {
                let v = f.domain[k];
                let a = f.domain[(k + n - 1) % n] - v;
                let b = f.domain[(k + 1) % n] - v;
                let angle = a.perp(&b).abs().atan2(a.dot(&b));
                assert_abs_diff_eq!(angle, f.domain_angles[k].radians(), epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn ring_sizes() {
        let t = build_rings(&rhombus(16), 5);
        assert_eq!(t.tiles_in_ring(0), 1);
        for n in 1..=5 {
            assert_eq!(t.tiles_in_ring(n), 8 * n as usize);
            assert_eq!(t.tile_count_through(n), (2 * n as usize + 1).pow(2));
        }
        assert_eq!(build_rings(&rhombus(17), 0).tiles.len(), 1);
        assert_eq!(build_rings(&rhombus(17), 2).tiles.len(), 25);
        assert_eq!(t.tiles.len(), 121);
        assert_abs_diff_eq!(
            t.area_through(5),
            121.0 * rhombus(16).tile.area(),
            epsilon = 1e-6
        );
    }

    #[test]
    fn images_fill_each_tile() {
        for id in 14..=17 {
            let f = rhombus(id);
            let t = build_rings(&f, 3);
            let mut per_tile: BTreeMap<(i64, i64), usize> = BTreeMap::new();
            for img in &t.images {
                *per_tile.entry(img.lattice_coords).or_default() += 1;
            }
            assert_eq!(per_tile.len(), 49, "case {id}");
            assert!(
                per_tile.values().all(|&n| n == f.copies_per_tile),
                "case {id}"
            );
        }
    }

    #[test]
    fn mirror_families_per_case() {
        let count = |id| build_rings(&rhombus(id), 1).mirror_families.len();
        assert_eq!(count(17), 2);
        assert_eq!(count(15), 4);
        assert_eq!(count(16), 3);
        assert_eq!(count(14), 6);
    }

    #[test]
    fn orbit_maps_back_to_q() {
        let f = rhombus(14);
        let t = build_rings(&f, 2);
        let q = f.point_from_weights(&[0.31, 0.47, 0.22]);
        let copies = t.point_orbit_in_rings(&q, 2, 1e-9).unwrap();
        assert!(copies.len() <= 4 * 25);
        for c in &copies {
            let back = t.images[c.image].map.inverse().apply(&c.point);
            assert!((back.0 - q.0).norm() < 1e-9);
        }
    }

    #[test]
    fn mirror_point_rejected() {
        let f = rhombus(17);
        let t = build_rings(&f, 1);
        assert!(matches!(
            t.point_orbit_in_rings(&PlanarPoint::new(0.5, 1.0), 1, 1e-9),
            Err(Error::NonGeneric(_))
        ));
        assert!(matches!(
            t.point_orbit_in_rings(&PlanarPoint::new(0.3, 0.4), 2, 1e-9),
            Err(Error::Domain(_))
        ));
        let copies = t
            .point_orbit_in_rings(&PlanarPoint::new(0.3, 0.4), 0, 1e-9)
            .unwrap();
        assert_eq!(copies.len(), 1);
        let export = t
            .to_export_with_orbit(&PlanarPoint::new(0.3, 0.4), 1e-9)
            .unwrap();
        assert_eq!(export.point_orbit.unwrap().len(), 9);
        let json = serde_json::to_value(t.to_export()).unwrap();
        assert!(json.get("point_orbit").is_none());
        assert_eq!(json["rings"][1].as_array().unwrap().len(), 8);
    }

    #[test]
    fn isometry_algebra() {
        let r = PlaneIsometry::reflection(&Vector2::new(1.0, 0.0), &Vector2::new(0.0, 1.0));
        let p = PlanarPoint::new(0.2, 0.1);
        assert!((r.apply(&r.apply(&p)).0 - p.0).norm() < 1e-15);
        assert!((r.apply(&p).0 - Vector2::new(0.9, 0.8)).norm() < 1e-12);
        assert!(!r.is_orientation_preserving());
        let g = r.compose(&PlaneIsometry::reflection(
            &Vector2::zeros(),
            &Vector2::new(1.0, 0.0),
        ));
        assert!((g.inverse().compose(&g).apply(&p).0 - p.0).norm() < 1e-12);
    }
}
