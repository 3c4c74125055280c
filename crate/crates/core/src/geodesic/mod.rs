//! Critical geodesics between a basepoint and a principal orbit, by unfolding.
//!
//! A geodesic in the orbit space from `p` to the orbit `Q` lifts to a
//! great-circle arc (sphere) or straight segment (plane) from `p` to one of the
//! copies of `q` in the tiling. Its Morse index is modelled as the number of
//! focal crossings along the lift plus the contribution of the endpoint form,
//! which is only known to be at least `m`.

mod plane;
mod sphere;


use std::collections::BTreeMap;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

pub use plane::{plane_geodesics, segment_crossing_events};
pub use sphere::{arc_crossing_events, sphere_geodesics};

/// How many fresh seeds [`MarkedConfiguration::draw`] tries before giving up.
pub const MAX_DRAWS: u64 = 1000;

/// How the endpoint form contributes to each record's index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AContribution {
    /// `max(m, 0)`: the form is taken at its smallest nonnegative value.
    #[default]
    Floor,
    /// Exactly `m`, with the resulting index clamped at zero.
    Minimal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IndexParams {
    /// Smallest possible index of the endpoint form.
    pub m: i64,
    pub model: AContribution,
}

impl Default for IndexParams {
    fn default() -> Self {
        IndexParams::new(0)
    }
}

impl IndexParams {
    pub fn new(m: i64) -> Self {
        IndexParams {
            m,
            model: AContribution::Floor,
        }
    }

    pub fn with_model(self, model: AContribution) -> Self {
        IndexParams { model, ..self }
    }

    /// `max(1, 1 − m)`.
    pub fn lambda(&self) -> u64 {
        (1 - self.m).max(1) as u64
    }

    pub fn a_contribution(&self) -> i64 {
        match self.model {
            AContribution::Floor => self.m.max(0),
            AContribution::Minimal => self.m,
        }
    }

    pub fn index(&self, crossings: u32) -> u32 {
        (crossings as i64 + self.a_contribution()).max(0) as u32
    }

    /// Largest crossing count whose index can still be `≤ n`, if any.
    pub fn crossing_cap(&self, n: u32) -> Option<u32> {
        u32::try_from(n as i64 - self.a_contribution()).ok()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StratumKind {
    /// The antipode of the basepoint on S².
    Antipode,
    /// A mirror line of the planar tiling, i.e. a 1-dimensional singular stratum.
    Edge { family: usize },
}

impl StratumKind {
    pub fn dimension(&self) -> u32 {
        match self {
            StratumKind::Antipode => 0,
            StratumKind::Edge { .. } => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CrossingEvent {
    /// Arc length from the basepoint.
    pub t: f64,
    pub kind: StratumKind,
    pub stratum_dimension: u32,
}

impl CrossingEvent {
    pub fn new(t: f64, kind: StratumKind) -> Self {
        CrossingEvent {
            t,
            kind,
            stratum_dimension: kind.dimension(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeodesicRecord {
    pub target_copy_id: usize,
    /// Unit tangent at the basepoint.
    pub initial_direction: Vec<f64>,
    /// `+1` toward the target along the shorter arc, `−1` the other way round.
    pub direction_sign: i8,
    /// Full turns around the great circle beyond the first arrival.
    pub winding: u32,
    pub length: f64,
    pub antipodal_crossings: u32,
    pub stratum_crossings: Vec<CrossingEvent>,
    /// Arrivals at the target copy, the endpoint included.
    pub visits_to_q: u32,
    /// Passages through other copies of `q` in the open arc.
    pub other_copy_passes: u32,
    pub index: u32,
    pub index_a_contribution: i64,
}

impl GeodesicRecord {
    pub fn is_single_visit(&self) -> bool {
        self.visits_to_q == 1
    }

    fn sort_key(&self) -> (usize, u32, i8) {
        (self.target_copy_id, self.winding, self.direction_sign)
    }
}

pub(crate) fn canonical_sort(records: &mut [GeodesicRecord]) {
    records.sort_by_key(GeodesicRecord::sort_key);
}

/// Why a configuration is not generic.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    NotPrincipal {
        point: &'static str,
    },
    CoincidesWithCopy {
        copy: usize,
    },
    AntipodalToCopy {
        copy: usize,
    },
    /// `p` lies on the great circle or line through these two copies.
    Collinear {
        copies: (usize, usize),
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotPrincipal { point } => {
                write!(f, "{point} is not in an open tile interior")
            }
            Violation::CoincidesWithCopy { copy } => write!(f, "p coincides with copy {copy} of q"),
            Violation::AntipodalToCopy { copy } => write!(f, "p is antipodal to copy {copy} of q"),
            Violation::Collinear { copies: (a, b) } => {
                write!(f, "p lies on the geodesic through copies {a} and {b} of q")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Genericity {
    Pass,
    Fail(Violation),
}

impl Genericity {
    pub fn is_pass(&self) -> bool {
        matches!(self, Genericity::Pass)
    }
}

/// A tiled model space in which geodesics unfold.
pub trait Surface {
    type Point: Copy + fmt::Debug;

    /// A random point of the fundamental tile.
    fn sample(&self, rng: &mut ChaCha8Rng) -> Self::Point;

    /// Whether `x` lies at least `tol` inside an open tile.
    fn is_principal(&self, x: &Self::Point, tol: f64) -> bool;

    /// The copies of `q` visible to the enumeration, indexed by copy id.
    fn copies(&self, q: &Self::Point) -> Vec<Self::Point>;

    /// Checks `p` against the copies of `q`; see [`genericity_check`].
    fn check_generic(&self, p: &Self::Point, q: &Self::Point, tol: f64) -> Genericity;

    fn coordinates(x: &Self::Point) -> Vec<f64>;

    fn kind() -> &'static str;
}

/// Passes iff `p` and `q` are principal, `p` is not a copy of `q` (nor, on
/// the sphere, antipodal to one) and no geodesic through `p` contains two
/// copies of `q`. Antipodal copy pairs on S² are exempt, since every great
/// circle through one contains the other.
pub fn genericity_check<S: Surface>(
    p: &S::Point,
    q: &S::Point,
    tiling: &S,
    tol: f64,
) -> Genericity {
    tiling.check_generic(p, q, tol)
}

/// Basepoint, principal-orbit representative and the tiling they live in.
#[derive(Debug, Clone)]
pub struct MarkedConfiguration<'a, S: Surface> {
    pub case_id: u32,
    pub tiling: &'a S,
    pub p: S::Point,
    pub q: S::Point,
    /// Seed that produced `p` and `q`.
    pub seed: u64,
    /// Seed originally asked for; differs from `seed` after re-draws.
    pub requested_seed: u64,
    /// Absolute tolerance for every geometric predicate.
    pub tol: f64,
}

impl<'a, S: Surface> MarkedConfiguration<'a, S> {
    /// Validates explicit points.
    pub fn new(
        case_id: u32,
        tiling: &'a S,
        p: S::Point,
        q: S::Point,
        seed: u64,
        tol: f64,
    ) -> Result<Self> {
        match tiling.check_generic(&p, &q, tol) {
            Genericity::Pass => Ok(MarkedConfiguration {
                case_id,
                tiling,
                p,
                q,
                seed,
                requested_seed: seed,
                tol,
            }),
            Genericity::Fail(v) => Err(Error::NonGeneric(v.to_string())),
        }
    }

    /// Draws `p` and `q` in the fundamental tile, moving to the next seed
    /// until the pair is generic.
    pub fn draw(case_id: u32, tiling: &'a S, seed: u64, tol: f64) -> Result<Self> {
        for s in seed..seed.saturating_add(MAX_DRAWS) {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let p = tiling.sample(&mut rng);
            let q = tiling.sample(&mut rng);
            if tiling.check_generic(&p, &q, tol).is_pass() {
                return Ok(MarkedConfiguration {
                    case_id,
                    tiling,
                    p,
                    q,
                    seed: s,
                    requested_seed: seed,
                    tol,
                });
            }
        }
        Err(Error::NonGeneric(format!(
            "no generic configuration within {MAX_DRAWS} seeds of {seed}"
        )))
    }

    pub fn genericity(&self) -> Genericity {
        self.tiling.check_generic(&self.p, &self.q, self.tol)
    }

    pub(crate) fn require_generic(&self) -> Result<()> {
        match self.genericity() {
            Genericity::Pass => Ok(()),
            Genericity::Fail(v) => Err(Error::NonGeneric(v.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CensusConfiguration {
    pub case_id: u32,
    pub surface: &'static str,
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    pub seed: u64,
    pub requested_seed: u64,
    pub m: i64,
    pub model: AContribution,
    pub max_index: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CensusSummary {
    pub record_count: usize,
    pub single_visit_count: usize,
    pub max_index: Option<u32>,
    pub per_index_counts: BTreeMap<u32, usize>,
}

/// Records of one configuration together with how they were produced.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeodesicCensus {
    pub configuration: CensusConfiguration,
    pub records: Vec<GeodesicRecord>,
    pub summary: CensusSummary,
}

impl GeodesicCensus {
    pub fn new<S: Surface>(
        config: &MarkedConfiguration<'_, S>,
        params: IndexParams,
        max_index: u32,
        records: Vec<GeodesicRecord>,
    ) -> Self {
        let mut per_index_counts = BTreeMap::new();
        for r in &records {
            *per_index_counts.entry(r.index).or_insert(0) += 1;
        }
        let summary = CensusSummary {
            record_count: records.len(),
            single_visit_count: records.iter().filter(|r| r.is_single_visit()).count(),
            max_index: records.iter().map(|r| r.index).max(),
            per_index_counts,
        };
        let configuration = CensusConfiguration {
            case_id: config.case_id,
            surface: S::kind(),
            p: S::coordinates(&config.p),
            q: S::coordinates(&config.q),
            seed: config.seed,
            requested_seed: config.requested_seed,
            m: params.m,
            model: params.model,
            max_index,
        };
        GeodesicCensus {
            configuration,
            records,
            summary,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("census serializes")
    }
}
