use std::f64::consts::PI;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{
    canonical_sort, CrossingEvent, Genericity, GeodesicRecord, IndexParams, MarkedConfiguration,
    StratumKind, Surface, Violation,
};
use crate::error::{Error, Result};
use crate::planar::{PlanarPoint, PlanarRingTiling};

impl Surface for PlanarRingTiling {
    type Point = PlanarPoint;

    fn sample(&self, rng: &mut ChaCha8Rng) -> PlanarPoint {
        let w: Vec<f64> = self
            .fundamental
            .domain
            .iter()
            .map(|_| rng.gen_range(0.05..1.0))
            .collect();
        self.fundamental.point_from_weights(&w)
    }

    fn is_principal(&self, x: &PlanarPoint, tol: f64) -> bool {
        !self.on_mirror(&x.0, tol)
    }

    fn copies(&self, q: &PlanarPoint) -> Vec<PlanarPoint> {
        self.images.iter().map(|img| img.map.apply(q)).collect()
    }

    fn check_generic(&self, p: &PlanarPoint, q: &PlanarPoint, tol: f64) -> Genericity {
        if !self.is_principal(p, tol) {
            return Genericity::Fail(Violation::NotPrincipal { point: "p" });
        }
        if !self.is_principal(q, tol) {
            return Genericity::Fail(Violation::NotPrincipal { point: "q" });
        }
        let copies = self.copies(q);
        let mut dirs = Vec::with_capacity(copies.len());
        for (i, c) in copies.iter().enumerate() {
            let d = c.0 - p.0;
            if d.norm() < tol {
                return Genericity::Fail(Violation::CoincidesWithCopy { copy: i });
            }
            dirs.push((d.y.atan2(d.x).rem_euclid(PI), i));
        }
        // Collinear copies share a direction mod π; only near-equal angles need the exact test.
        dirs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let window = 1e-6;
        let n = dirs.len();
        for k in 0..n {
            for step in 1..n {
                let (a, i) = dirs[k];
                let (b, j) = dirs[(k + step) % n];
                let gap = (b - a).rem_euclid(PI);
                if gap > window && PI - gap > window {
                    break;
                }
                let (u, v) = (copies[i].0 - p.0, copies[j].0 - p.0);
                if u.perp(&v).abs() < tol * (u - v).norm() {
                    return Genericity::Fail(Violation::Collinear {
                        copies: (i.min(j), i.max(j)),
                    });
                }
            }
        }
        Genericity::Pass
    }

    fn coordinates(x: &PlanarPoint) -> Vec<f64> {
        x.to_array().to_vec()
    }

    fn kind() -> &'static str {
        "plane"
    }
}

/// Transversal crossings of the segment `a → b` with mirror lines, ordered by
/// distance from `a`.
pub fn segment_crossing_events(
    a: &PlanarPoint,
    b: &PlanarPoint,
    tiling: &PlanarRingTiling,
    tol: f64,
) -> Result<Vec<CrossingEvent>> {
    let length = (b.0 - a.0).norm();
    let mut events = vec![];
    for (family, f) in tiling.mirror_families.iter().enumerate() {
        let (s0, s1) = (f.coordinate(&a.0), f.coordinate(&b.0));
        for s in [s0, s1] {
            if (s - s.round()).abs() * f.spacing < tol {
                return Err(Error::NonGeneric(
                    "segment endpoint lies on a mirror".into(),
                ));
            }
        }
        let (lo, hi) = (s0.min(s1), s0.max(s1));
        for k in (lo.ceil() as i64)..=(hi.floor() as i64) {
            let t = (k as f64 - s0) / (s1 - s0);
            events.push(CrossingEvent::new(t * length, StratumKind::Edge { family }));
        }
    }
    events.sort_by(|x, y| x.t.total_cmp(&y.t).then(x.kind.cmp(&y.kind)));
    if events.windows(2).any(|w| w[1].t - w[0].t < tol) {
        return Err(Error::NonGeneric(
            "segment passes through a tiling vertex".into(),
        ));
    }
    Ok(events)
}

/// One straight segment from `p` to each copy of `q` in the rings that can
/// carry index `≤ max_index`, in canonical order.
pub fn plane_geodesics(
    config: &MarkedConfiguration<'_, PlanarRingTiling>,
    params: IndexParams,
    max_index: u32,
) -> Result<Vec<GeodesicRecord>> {
    config.require_generic()?;
    let Some(horizon) = params.crossing_cap(max_index) else {
        return Ok(vec![]);
    };
    let tiling = config.tiling;
    if horizon > tiling.n_max {
        return Err(Error::Domain(format!(
            "index {max_index} needs rings through {horizon}, built through {}",
            tiling.n_max
        )));
    }
    let mut records = vec![];
    for copy in tiling.point_orbit_in_rings(&config.q, horizon, config.tol)? {
        let events = segment_crossing_events(&config.p, &copy.point, tiling, config.tol)?;
        let d = copy.point.0 - config.p.0;
        let crossings = events.len() as u32;
        records.push(GeodesicRecord {
            target_copy_id: copy.image,
            initial_direction: d.normalize().iter().copied().collect(),
            direction_sign: 1,
            winding: 0,
            length: d.norm(),
            antipodal_crossings: 0,
            stratum_crossings: events,
            visits_to_q: 1,
            other_copy_passes: 0,
            index: params.index(crossings),
            index_a_contribution: params.a_contribution(),
        });
    }
    canonical_sort(&mut records);
    Ok(records)
}
