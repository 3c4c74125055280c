use std::f64::consts::PI;

use nalgebra::Vector3;
use serde::{Serialize, Serializer};

use crate::angle::PiMultiple;
use crate::error::{Error, Result};

/// A point of the unit sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitVector(Vector3<f64>);

impl UnitVector {
    /// Normalizes `v`. Errors on a (numerically) zero vector.
    pub fn new(v: Vector3<f64>) -> Result<Self> {
        let n = v.norm();
        if !(n.is_finite() && n > 1e-300) {
            return Err(Error::Domain(format!("cannot normalize {v:?}")));
        }
        Ok(UnitVector(v / n))
    }

    pub fn from_xyz(x: f64, y: f64, z: f64) -> Result<Self> {
        Self::new(Vector3::new(x, y, z))
    }

    pub fn north() -> Self {
        UnitVector(Vector3::z())
    }

    pub fn as_vector(&self) -> &Vector3<f64> {
        &self.0
    }

    pub fn into_inner(self) -> Vector3<f64> {
        self.0
    }

    pub fn dot(&self, other: &UnitVector) -> f64 {
        self.0.dot(&other.0)
    }

    pub fn antipode(&self) -> UnitVector {
        UnitVector(-self.0)
    }

    /// Great-circle distance in `[0, π]`.
    pub fn distance(&self, other: &UnitVector) -> f64 {
        let cross = self.0.cross(&other.0).norm();
        cross.atan2(self.dot(other))
    }

    pub fn to_array(&self) -> [f64; 3] {
        [self.0.x, self.0.y, self.0.z]
    }
}

impl Serialize for UnitVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_array().serialize(s)
    }
}

/// Householder reflection of `point` across the great circle with unit normal `mirror_normal`.
pub fn reflect(point: &UnitVector, mirror_normal: &UnitVector) -> UnitVector {
    let n = mirror_normal.as_vector();
    let p = point.as_vector();
    UnitVector(p - 2.0 * p.dot(n) * n)
}

/// Angle at `vertex` between the great-circle arcs to `a` and `b`, measured
/// between their tangent-plane projections.
pub fn vertex_angle(vertex: &UnitVector, a: &UnitVector, b: &UnitVector) -> f64 {
    let v = vertex.as_vector();
    let ta = a.as_vector() - a.dot(vertex) * v;
    let tb = b.as_vector() - b.dot(vertex) * v;
    ta.cross(&tb).norm().atan2(ta.dot(&tb))
}

/// A geodesic triangle on S² with declared corner angles.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SphericalTriangle {
    pub vertices: [UnitVector; 3],
    pub angles: [PiMultiple; 3],
}

impl SphericalTriangle {
    /// Corner angles measured from the vertex positions.
    pub fn measured_angles(&self) -> [f64; 3] {
        let [a, b, c] = &self.vertices;
        [
            vertex_angle(a, b, c),
            vertex_angle(b, c, a),
            vertex_angle(c, a, b),
        ]
    }

    /// Arc lengths of the sides opposite each vertex.
    pub fn side_lengths(&self) -> [f64; 3] {
        let [a, b, c] = &self.vertices;
        [b.distance(c), c.distance(a), a.distance(b)]
    }

    /// Declared spherical excess `α+β+γ−π` (the area).
    pub fn excess(&self) -> f64 {
        (PiMultiple::sum(self.angles) - PiMultiple::PI).radians()
    }

    /// Excess computed from the measured angles.
    pub fn measured_excess(&self) -> f64 {
        self.measured_angles().iter().sum::<f64>() - PI
    }

    /// Unit normal of the great circle through the side opposite vertex `i`,
    /// oriented toward vertex `i`.
    pub fn inward_normal(&self, i: usize) -> UnitVector {
        let (b, c) = (&self.vertices[(i + 1) % 3], &self.vertices[(i + 2) % 3]);
        let n = b.as_vector().cross(c.as_vector());
        let n = if n.dot(self.vertices[i].as_vector()) < 0.0 {
            -n
        } else {
            n
        };
        UnitVector::new(n).expect("triangle sides are non-degenerate")
    }

    /// Whether `x` lies in the open triangle, at least `tol` away from each side's plane.
    pub fn contains(&self, x: &UnitVector, tol: f64) -> bool {
        (0..3).all(|i| self.inward_normal(i).dot(x) > tol)
    }

    /// Normalized vertex average; interior for any proper spherical triangle.
    pub fn centroid(&self) -> UnitVector {
        let s: Vector3<f64> = self.vertices.iter().map(|v| v.into_inner()).sum();
        UnitVector::new(s).expect("vertices of a proper triangle do not cancel")
    }

    /// Normalized barycentric combination of the vertices.
    pub fn point_from_weights(&self, w: [f64; 3]) -> UnitVector {
        let s = self.vertices[0].as_vector() * w[0]
            + self.vertices[1].as_vector() * w[1]
            + self.vertices[2].as_vector() * w[2];
        UnitVector::new(s).expect("positive weights give a nonzero combination")
    }
}

/// Realizes the spherical triangle with corner angles `(α, β, γ)`.
///
/// `A` sits at the north pole, `B` on the prime meridian, `C` at longitude α.
/// Side lengths come from the law of cosines for angles,
/// `cos a = (cos α + cos β cos γ)/(sin β sin γ)`.
pub fn triangle_from_angles(
    alpha: PiMultiple,
    beta: PiMultiple,
    gamma: PiMultiple,
) -> Result<SphericalTriangle> {
    let angles = [alpha, beta, gamma];
    if angles
        .iter()
        .any(|&a| a <= PiMultiple::ZERO || a >= PiMultiple::PI)
    {
        return Err(Error::Domain(format!(
            "angles ({alpha}, {beta}, {gamma}) must lie in (0, π)"
        )));
    }
    if PiMultiple::sum(angles) <= PiMultiple::PI {
        return Err(Error::NotSpherical(format!("({alpha}, {beta}, {gamma})")));
    }
    let [a, b, g] = angles.map(PiMultiple::radians);
    let side = |x: f64, y: f64, z: f64| {
        ((x.cos() + y.cos() * z.cos()) / (y.sin() * z.sin()))
            .clamp(-1.0, 1.0)
            .acos()
    };
    let side_b = side(b, a, g);
    let side_c = side(g, a, b);
    let va = UnitVector::north();
    let vb = UnitVector::from_xyz(side_c.sin(), 0.0, side_c.cos())?;
    let vc = UnitVector::from_xyz(side_b.sin() * a.cos(), side_b.sin() * a.sin(), side_b.cos())?;
    Ok(SphericalTriangle {
        vertices: [va, vb, vc],
        angles,
    })
}

/// Law-of-cosines side length opposite the first angle.
pub fn side_opposite(alpha: PiMultiple, beta: PiMultiple, gamma: PiMultiple) -> f64 {
    let [a, b, g] = [alpha, beta, gamma].map(PiMultiple::radians);
    ((a.cos() + b.cos() * g.cos()) / (b.sin() * g.sin()))
        .clamp(-1.0, 1.0)
        .acos()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn pm(n: i64, d: i64) -> PiMultiple {
        PiMultiple::new(n, d)
    }

    #[test]
    fn octant_has_quarter_circle_sides() {
        let t = triangle_from_angles(pm(1, 2), pm(1, 2), pm(1, 2)).unwrap();
        for s in t.side_lengths() {
            assert_abs_diff_eq!(s, PI / 2.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn octahedral_triangle_remeasures() {
        let t = triangle_from_angles(pm(1, 2), pm(1, 3), pm(1, 4)).unwrap();
        // oracle: re-measure the rebuilt triangle's corners
        let measured = t.measured_angles();
        for (m, d) in measured.iter().zip(t.angles) {
            assert_abs_diff_eq!(*m, d.radians(), epsilon = 1e-9);
        }
        // cos a = cos(π/3)cos(π/4)/(sin(π/3)sin(π/4)) = 1/√3
        let a = t.side_lengths()[0];
        assert_abs_diff_eq!(a.cos(), 1.0 / 3f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(a, 0.955_316_618_124_509_2, epsilon = 1e-12);
    }

    #[test]
    fn rejects_non_spherical() {
        let err = triangle_from_angles(pm(1, 6), pm(1, 6), pm(1, 6)).unwrap_err();
        assert!(matches!(err, Error::NotSpherical(_)));
        assert!(triangle_from_angles(pm(1, 3), pm(1, 3), pm(1, 3)).is_err());
        assert!(matches!(
            triangle_from_angles(pm(1, 1), pm(1, 2), pm(1, 2)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn reflect_examples() {
        let n = UnitVector::from_xyz(0.3, -0.4, 0.5).unwrap();
        let r = reflect(&n, &n);
        assert_abs_diff_eq!(
            (r.into_inner() + n.into_inner()).norm(),
            0.0,
            epsilon = 1e-15
        );
        let x = UnitVector::from_xyz(0.4, 0.3, 0.0).unwrap();
        let z = UnitVector::north();
        assert_abs_diff_eq!(
            (reflect(&x, &z).into_inner() - x.into_inner()).norm(),
            0.0,
            epsilon = 1e-15
        );
    }

    fn unit() -> impl Strategy<Value = UnitVector> {
        (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0)
            .prop_filter("nonzero", |(x, y, z)| x * x + y * y + z * z > 1e-3)
            .prop_map(|(x, y, z)| UnitVector::from_xyz(x, y, z).unwrap())
    }

    proptest! {
        #[test]
        fn reflection_is_an_involutive_isometry(x in unit(), y in unit(), n in unit()) {
            let rx = reflect(&x, &n);
            prop_assert!((rx.as_vector().norm() - 1.0).abs() < 1e-12);
            prop_assert!((reflect(&rx, &n).into_inner() - x.into_inner()).norm() < 1e-12);
            let ry = reflect(&y, &n);
            prop_assert!((rx.dot(&ry) - x.dot(&y)).abs() < 1e-12);
        }

        #[test]
        fn constructed_triangles_match_declared_angles(i in 0usize..4, j in 0usize..4, k in 0usize..4) {
            let d = [2i64, 3, 4, 5];
            let angles = [pm(1, d[i]), pm(1, d[j]), pm(1, d[k])];
            match triangle_from_angles(angles[0], angles[1], angles[2]) {
                Ok(t) => {
                    for (m, a) in t.measured_angles().iter().zip(angles) {
                        prop_assert!((m - a.radians()).abs() < 1e-9);
                    }
                    prop_assert!(t.excess() > 0.0);
                    for v in &t.vertices {
                        prop_assert!((v.as_vector().norm() - 1.0).abs() < 1e-12);
                    }
                }
                Err(_) => prop_assert!(PiMultiple::sum(angles) <= PiMultiple::PI),
            }
        }
    }
}
