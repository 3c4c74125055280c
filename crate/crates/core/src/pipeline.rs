//! End-to-end runs: tiling, geodesic censuses over several seeds, bound report.

use serde::Serialize;

use crate::bounds::{
    aggregate_worst_case, check_linear_bound, check_quadratic_bound, index_histogram,
    BettiBoundReport,
};
use crate::classification::{CurvatureClass, OrbitSpaceCase, TilingTarget};
use crate::error::{Error, Result};
use crate::geodesic::{
    plane_geodesics, sphere_geodesics, GeodesicCensus, IndexParams, MarkedConfiguration,
};
use crate::planar::{build_rings, fundamental_rhombus, PlanarRingTiling};
use crate::spherical::{tiling_for_region, FundamentalRegion, SphericalTiling};
use crate::tolerance::Tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PipelineOptions {
    pub n_max: u32,
    pub params: IndexParams,
    /// First seed; configuration `i` starts from `seed + i`.
    pub seed: u64,
    pub seeds: u32,
    pub tolerance: f64,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            n_max: 20,
            params: IndexParams::default(),
            seed: 0,
            seeds: 10,
            tolerance: Tolerance::DEFAULT.value(),
        }
    }
}

/// The model space a case unfolds into.
#[derive(Debug, Clone)]
pub enum UnfoldedModel {
    Sphere(SphericalTiling),
    Plane(PlanarRingTiling),
}

impl UnfoldedModel {
    /// Builds the tiling of a concrete, tiled case. Planar rings are built as
    /// far as indices up to `n_max` can reach.
    pub fn for_case(
        case: &OrbitSpaceCase,
        n_max: u32,
        params: IndexParams,
    ) -> Result<UnfoldedModel> {
        let tiling = case.tiling.as_ref().ok_or(Error::NoTiling {
            case_id: case.case_id,
        })?;
        if !case.is_concrete() {
            return Err(Error::UnsupportedCase {
                case_id: case.case_id,
                reason: "parametric family; fix its parameters first".into(),
            });
        }
        match tiling.target {
            TilingTarget::Sphere => Ok(UnfoldedModel::Sphere(tiling_for_region(
                &FundamentalRegion::for_case(case)?,
            )?)),
            TilingTarget::Plane => {
                let rings = params.crossing_cap(n_max).unwrap_or(0);
                Ok(UnfoldedModel::Plane(build_rings(
                    &fundamental_rhombus(case)?,
                    rings,
                )))
            }
        }
    }

    pub fn surface(&self) -> &'static str {
        match self {
            UnfoldedModel::Sphere(_) => "sphere",
            UnfoldedModel::Plane(_) => "plane",
        }
    }

    /// Census of the first generic configuration at or after `seed`.
    pub fn census(
        &self,
        case_id: u32,
        seed: u64,
        params: IndexParams,
        n_max: u32,
        tol: f64,
    ) -> Result<GeodesicCensus> {
        match self {
            UnfoldedModel::Sphere(t) => {
                let cfg = MarkedConfiguration::draw(case_id, t, seed, tol)?;
                Ok(GeodesicCensus::new(
                    &cfg,
                    params,
                    n_max,
                    sphere_geodesics(&cfg, params, n_max)?,
                ))
            }
            UnfoldedModel::Plane(t) => {
                let cfg = MarkedConfiguration::draw(case_id, t, seed, tol)?;
                Ok(GeodesicCensus::new(
                    &cfg,
                    params,
                    n_max,
                    plane_geodesics(&cfg, params, n_max)?,
                ))
            }
        }
    }

    /// Bound report for one census.
    pub fn report(
        &self,
        census: &GeodesicCensus,
        params: IndexParams,
        n_max: u32,
    ) -> BettiBoundReport {
        let hist = index_histogram(&census.records);
        let report = match self {
            UnfoldedModel::Sphere(t) => {
                check_linear_bound(&hist, t.tile_count() as u64, params, n_max)
            }
            UnfoldedModel::Plane(_) => check_quadratic_bound(&hist, params, n_max),
        };
        report.with_case_id(census.configuration.case_id)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeedRun {
    pub requested_seed: u64,
    pub seed: u64,
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    pub record_count: usize,
    pub single_visit_count: usize,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PipelineReport {
    pub case_id: u32,
    pub curvature_class: CurvatureClass,
    pub surface: &'static str,
    /// Tiles of the sphere tiling.
    pub tile_count: Option<usize>,
    /// Copies of the fundamental polygon per rhombus.
    pub copies_per_tile: Option<usize>,
    pub options: PipelineOptions,
    pub runs: Vec<SeedRun>,
    /// Worst case over all runs.
    pub report: BettiBoundReport,
}

impl PipelineReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn run_pipeline(case: &OrbitSpaceCase, options: &PipelineOptions) -> Result<PipelineReport> {
    if options.seeds == 0 {
        return Err(Error::Domain("at least one seed is needed".into()));
    }
    let model = UnfoldedModel::for_case(case, options.n_max, options.params)?;
    let mut runs = vec![];
    let mut reports = vec![];
    for i in 0..options.seeds as u64 {
        let census = model.census(
            case.case_id,
            options.seed + i,
            options.params,
            options.n_max,
            options.tolerance,
        )?;
        let report = model.report(&census, options.params, options.n_max);
        runs.push(SeedRun {
            requested_seed: census.configuration.requested_seed,
            seed: census.configuration.seed,
            p: census.configuration.p.clone(),
            q: census.configuration.q.clone(),
            record_count: census.summary.record_count,
            single_visit_count: census.summary.single_visit_count,
            satisfied: report.all_satisfied(),
        });
        reports.push(report);
    }
    let (tile_count, copies_per_tile) = match &model {
        UnfoldedModel::Sphere(t) => (Some(t.tile_count()), None),
        UnfoldedModel::Plane(t) => (None, Some(t.fundamental.copies_per_tile)),
    };
    Ok(PipelineReport {
        case_id: case.case_id,
        curvature_class: case.curvature_class,
        surface: model.surface(),
        tile_count,
        copies_per_tile,
        options: *options,
        runs,
        report: aggregate_worst_case(&reports)?,
    })
}
