use std::f64::consts::PI;

use nalgebra::Vector3;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{
    canonical_sort, CrossingEvent, Genericity, GeodesicRecord, IndexParams, MarkedConfiguration,
    StratumKind, Surface, Violation,
};
use crate::error::{Error, Result};
use crate::spherical::{FundamentalRegion, SphericalTiling, UnitVector};

const TAU: f64 = 2.0 * PI;

impl Surface for SphericalTiling {
    type Point = UnitVector;

    fn sample(&self, rng: &mut ChaCha8Rng) -> UnitVector {
        match self.region() {
            FundamentalRegion::Triangle(t) => {
                t.point_from_weights([(); 3].map(|_| rng.gen_range(0.05..1.0)))
            }
            FundamentalRegion::Hemisphere => loop {
                let v = Vector3::new(
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(0.1..1.0),
                );
                if let Ok(u) = UnitVector::new(v) {
                    break u;
                }
            },
            FundamentalRegion::Sphere => loop {
                let v = Vector3::from_fn(|_, _| rng.gen_range(-1.0..1.0));
                if v.norm() > 0.1 {
                    break UnitVector::new(v).expect("nonzero");
                }
            },
        }
    }

    fn is_principal(&self, x: &UnitVector, tol: f64) -> bool {
        self.locate(x, tol).is_some()
    }

    fn copies(&self, q: &UnitVector) -> Vec<UnitVector> {
        self.group_elements()
            .map(|g| UnitVector::new(g * q.as_vector()).expect("orthogonal image is nonzero"))
            .collect()
    }

    fn check_generic(&self, p: &UnitVector, q: &UnitVector, tol: f64) -> Genericity {
        if !self.is_principal(p, tol) {
            return Genericity::Fail(Violation::NotPrincipal { point: "p" });
        }
        if !self.is_principal(q, tol) {
            return Genericity::Fail(Violation::NotPrincipal { point: "q" });
        }
        let copies = self.copies(q);
        for (i, c) in copies.iter().enumerate() {
            if (p.as_vector() - c.as_vector()).norm() < tol {
                return Genericity::Fail(Violation::CoincidesWithCopy { copy: i });
            }
            if (p.as_vector() + c.as_vector()).norm() < tol {
                return Genericity::Fail(Violation::AntipodalToCopy { copy: i });
            }
        }
        for i in 0..copies.len() {
            for j in i + 1..copies.len() {
                let (a, b) = (copies[i].as_vector(), copies[j].as_vector());
                if (a + b).norm() < tol {
                    continue;
                }
                let normal = a.cross(b);
                if normal.dot(p.as_vector()).abs() < tol * normal.norm() {
                    return Genericity::Fail(Violation::Collinear { copies: (i, j) });
                }
            }
        }
        Genericity::Pass
    }

    fn coordinates(x: &UnitVector) -> Vec<f64> {
        x.to_array().to_vec()
    }

    fn kind() -> &'static str {
        "sphere"
    }
}

/// Antipode passages along an arc of the given length leaving the basepoint.
/// The antipode sits at arc lengths π, 3π, 5π, …
pub fn arc_crossing_events(length: f64, tol: f64) -> Result<Vec<CrossingEvent>> {
    if length <= 0.0 {
        return Err(Error::Domain(format!(
            "arc length {length} is not positive"
        )));
    }
    let mut events = vec![];
    let mut t = PI;
    while t < length + tol {
        if (length - t).abs() < tol {
            return Err(Error::NonGeneric(
                "arc ends at the antipode of the basepoint".into(),
            ));
        }
        events.push(CrossingEvent::new(t, StratumKind::Antipode));
        t += TAU;
    }
    Ok(events)
}

/// Times a point at arc position `pos ∈ (0, 2π)` is passed strictly before `length`.
fn passes(pos: f64, length: f64) -> u32 {
    if pos >= length {
        0
    } else {
        ((length - pos) / TAU).ceil() as u32
    }
}

/// Every great-circle arc from `p` to a copy of `q` whose index is at most
/// `max_index`, in canonical order.
pub fn sphere_geodesics(
    config: &MarkedConfiguration<'_, SphericalTiling>,
    params: IndexParams,
    max_index: u32,
) -> Result<Vec<GeodesicRecord>> {
    config.require_generic()?;
    let Some(cap) = params.crossing_cap(max_index) else {
        return Ok(vec![]);
    };
    let (p, tol) = (config.p, config.tol);
    let copies = config.tiling.copies(&config.q);
    let mut records = vec![];
    for (id, c) in copies.iter().enumerate() {
        let theta = p.distance(c);
        let normal = p.as_vector().cross(c.as_vector()).normalize();
        let tangent = normal.cross(p.as_vector());
        let on_circle: Vec<f64> = copies
            .iter()
            .enumerate()
            .filter(|&(j, d)| j != id && d.as_vector().dot(&normal).abs() < tol)
            .map(|(_, d)| d.as_vector().dot(&tangent).atan2(d.dot(&p)).rem_euclid(TAU))
            .collect();
        for sign in [1i8, -1] {
            let start = if sign > 0 { theta } else { TAU - theta };
            for winding in 0..=cap {
                let length = start + TAU * winding as f64;
                let events = arc_crossing_events(length, tol)?;
                let crossings = events.len() as u32;
                if crossings > cap {
                    break;
                }
                let other_copy_passes = on_circle
                    .iter()
                    .map(|&phi| passes(if sign > 0 { phi } else { TAU - phi }, length))
                    .sum();
                let direction = tangent * sign as f64;
                records.push(GeodesicRecord {
                    target_copy_id: id,
                    initial_direction: direction.iter().copied().collect(),
                    direction_sign: sign,
                    winding,
                    length,
                    antipodal_crossings: crossings,
                    stratum_crossings: events,
                    visits_to_q: winding + 1,
                    other_copy_passes,
                    index: params.index(crossings),
                    index_a_contribution: params.a_contribution(),
                });
            }
        }
    }
    canonical_sort(&mut records);
    Ok(records)
}
