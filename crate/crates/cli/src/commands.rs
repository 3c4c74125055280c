use std::fmt::Write as _;

use orbifold_core::bounds::BettiBoundReport;
use orbifold_core::classification::{
    case_by_id, cases_to_csv, cases_to_json, enumerate_all_cases, enumerate_flat_cases,
    enumerate_positive_cases, OrbitSpaceCase, Param, TableLayout,
};
use orbifold_core::geodesic::{GeodesicCensus, IndexParams, MarkedConfiguration};
use orbifold_core::pipeline::{run_pipeline, PipelineOptions, PipelineReport, UnfoldedModel};
use orbifold_core::{BoundaryAngle, PiMultiple};
use serde::Serialize;

use crate::config::{Curvature, Format, RunConfig};
use crate::CliError;

/// Classification tables.
pub fn cmd_classify(cfg: &RunConfig) -> Result<String, CliError> {
    let positive = || cases_to_csv(&enumerate_positive_cases(), TableLayout::WithTileCount);
    let flat = || cases_to_csv(&enumerate_flat_cases(), TableLayout::WithoutTileCount);
    Ok(match (cfg.format, cfg.curvature) {
        (Format::Csv, Curvature::Pos) => positive(),
        (Format::Csv, Curvature::Flat) => flat(),
        (Format::Csv, Curvature::All) => format!("{}\n{}", positive(), flat()),
        (Format::Json, Curvature::Pos) => cases_to_json(&enumerate_positive_cases()),
        (Format::Json, Curvature::Flat) => cases_to_json(&enumerate_flat_cases()),
        (Format::Json, Curvature::All) => cases_to_json(&enumerate_all_cases()),
    })
}

/// The case named by `--case`/`--param` or matched by `--angles`.
pub fn resolve_case(cfg: &RunConfig) -> Result<OrbitSpaceCase, CliError> {
    let mut case = match (&cfg.case, &cfg.angles) {
        (Some(id), None) => case_by_id(*id).map_err(|e| CliError::Usage(e.to_string()))?,
        (None, Some(angles)) => case_from_angles(angles)?,
        _ => return Err(CliError::Usage("give --case or --angles".into())),
    };
    for (name, value) in &cfg.params {
        let param = Param::from_name(name)
            .ok_or_else(|| CliError::Usage(format!("unknown parameter `{name}`")))?;
        case = case
            .substitute(param, *value)
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    Ok(case)
}

fn case_from_angles(raw: &[String]) -> Result<OrbitSpaceCase, CliError> {
    let mut wanted = raw
        .iter()
        .map(|s| {
            let a: PiMultiple = s
                .parse()
                .map_err(|e| CliError::Usage(format!("bad angle `{s}`: {e}")))?;
            BoundaryAngle::new(a).map_err(|e| CliError::Usage(e.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    wanted.sort();
    enumerate_all_cases()
        .iter()
        .flat_map(|c| c.instances())
        .find(|c| {
            c.cones.is_empty()
                && c.boundary_angles().is_some_and(|mut b| {
                    b.sort();
                    b == wanted
                })
        })
        .ok_or_else(|| {
            CliError::Usage(format!(
                "no orbit space has boundary angles {}",
                raw.join(" ")
            ))
        })
}

fn index_params(cfg: &RunConfig) -> IndexParams {
    IndexParams::new(cfg.m).with_model(cfg.model.into())
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    run: &'a RunConfig,
    case_id: u32,
    result: T,
}

fn envelope<T: Serialize>(cfg: &RunConfig, case_id: u32, result: T) -> String {
    serde_json::to_string_pretty(&Envelope {
        run: cfg,
        case_id,
        result,
    })
    .expect("output serializes")
}

/// Sphere tiling or planar rings of one case.
pub fn cmd_tile(cfg: &RunConfig) -> Result<String, CliError> {
    let case = resolve_case(cfg)?;
    let model = UnfoldedModel::for_case(&case, cfg.n_max, IndexParams::new(0))?;
    Ok(match (cfg.format, &model) {
        (Format::Json, UnfoldedModel::Sphere(t)) => envelope(cfg, case.case_id, t.to_export()),
        (Format::Json, UnfoldedModel::Plane(t)) => {
            let marked = MarkedConfiguration::draw(case.case_id, t, cfg.seed, cfg.tolerance)?;
            envelope(
                cfg,
                case.case_id,
                t.to_export_with_orbit(&marked.q, cfg.tolerance)?,
            )
        }
        (Format::Csv, UnfoldedModel::Sphere(t)) => {
            let mut out = String::from("tile,vertices\n");
            for (i, tile) in t.tiles().iter().enumerate() {
                let v: Vec<String> = tile
                    .vertices
                    .iter()
                    .flat_map(|v| v.to_array())
                    .map(|x| format!("{x:.12}"))
                    .collect();
                writeln!(out, "{i},{}", v.join(" ")).unwrap();
            }
            out
        }
        (Format::Csv, UnfoldedModel::Plane(t)) => {
            let mut out = String::from("ring,i,j,vertices\n");
            for tile in t.tiles.values() {
                let v: Vec<String> = tile
                    .vertices
                    .iter()
                    .flat_map(|v| v.to_array())
                    .map(|x| format!("{x:.12}"))
                    .collect();
                writeln!(
                    out,
                    "{},{},{},{}",
                    tile.ring_index,
                    tile.lattice_coords.0,
                    tile.lattice_coords.1,
                    v.join(" ")
                )
                .unwrap();
            }
            out
        }
    })
}

pub fn census(cfg: &RunConfig) -> Result<(u32, GeodesicCensus), CliError> {
    let case = resolve_case(cfg)?;
    let params = index_params(cfg);
    let model = UnfoldedModel::for_case(&case, cfg.n_max, params)?;
    Ok((
        case.case_id,
        model.census(case.case_id, cfg.seed, params, cfg.n_max, cfg.tolerance)?,
    ))
}

/// Geodesic census of one configuration.
pub fn cmd_geodesics(cfg: &RunConfig) -> Result<String, CliError> {
    let (case_id, census) = census(cfg)?;
    Ok(match cfg.format {
        Format::Json => envelope(cfg, case_id, &census),
        Format::Csv => {
            let mut out = String::from("copy,direction,winding,length,antipodal_crossings,stratum_crossings,visits_to_q,index\n");
            for r in &census.records {
                writeln!(
                    out,
                    "{},{},{},{:.12},{},{},{},{}",
                    r.target_copy_id,
                    r.direction_sign,
                    r.winding,
                    r.length,
                    r.antipodal_crossings,
                    r.stratum_crossings.len(),
                    r.visits_to_q,
                    r.index
                )
                .unwrap();
            }
            out
        }
    })
}

pub fn pipeline_report(cfg: &RunConfig) -> Result<PipelineReport, CliError> {
    let case = resolve_case(cfg)?;
    let options = PipelineOptions {
        n_max: cfg.n_max,
        params: index_params(cfg),
        seed: cfg.seed,
        seeds: cfg.seeds,
        tolerance: cfg.tolerance,
    };
    Ok(run_pipeline(&case, &options)?)
}

/// End-to-end run; returns the main output and the plot series.
pub fn cmd_pipeline(cfg: &RunConfig) -> Result<(String, String), CliError> {
    let report = pipeline_report(cfg)?;
    let plot = plot_json(&report.report);
    let main = match cfg.format {
        Format::Json => envelope(cfg, report.case_id, &report),
        Format::Csv => report.report.to_csv(),
    };
    Ok((main, plot))
}

fn plot_json(report: &BettiBoundReport) -> String {
    serde_json::to_string_pretty(&report.plot_series()).expect("plot serializes")
}
