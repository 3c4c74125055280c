use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use orbifold_core::geodesic::AContribution;
use orbifold_core::Tolerance;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Curvature {
    Pos,
    Flat,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    Floor,
    Minimal,
}

impl From<Model> for AContribution {
    fn from(m: Model) -> Self {
        match m {
            Model::Floor => AContribution::Floor,
            Model::Minimal => AContribution::Minimal,
        }
    }
}

/// Settings read from a TOML file; every key is optional.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub case: Option<u32>,
    pub angles: Option<Vec<String>>,
    pub params: Option<BTreeMap<String, i64>>,
    pub curvature: Option<Curvature>,
    pub seed: Option<u64>,
    pub seeds: Option<u32>,
    pub m: Option<i64>,
    pub model: Option<Model>,
    pub n_max: Option<u32>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub tolerance: Option<f64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<FileConfig, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text)
            .map_err(|e| CliError::Usage(format!("invalid config {}: {e}", path.display())))
    }
}

/// Fully resolved settings of one invocation, echoed into JSON outputs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    pub case: Option<u32>,
    pub angles: Option<Vec<String>>,
    pub params: BTreeMap<String, i64>,
    pub curvature: Curvature,
    pub seed: u64,
    pub seeds: u32,
    pub m: i64,
    pub model: Model,
    pub n_max: u32,
    pub format: Format,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    pub tolerance: f64,
}

impl RunConfig {
    pub const DEFAULT_SEEDS: u32 = 10;
    pub const DEFAULT_N_MAX: u32 = 20;

    pub fn defaults(command: &'static str) -> RunConfig {
        RunConfig {
            command,
            case: None,
            angles: None,
            params: BTreeMap::new(),
            curvature: Curvature::All,
            seed: 0,
            seeds: Self::DEFAULT_SEEDS,
            m: 0,
            model: Model::Floor,
            n_max: Self::DEFAULT_N_MAX,
            format: Format::Json,
            out: None,
            tolerance: Tolerance::from_env().value(),
        }
    }

    pub fn apply(&mut self, f: FileConfig) {
        macro_rules! take {
            ($($field:ident),*) => { $( if let Some(v) = f.$field { self.$field = v; } )* };
        }
        take!(curvature, seed, seeds, m, model, n_max, format, tolerance);
        if f.case.is_some() {
            self.case = f.case;
        }
        if f.angles.is_some() {
            self.angles = f.angles;
        }
        if f.out.is_some() {
            self.out = f.out;
        }
        if let Some(p) = f.params {
            self.params.extend(p);
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(CliError::Usage(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if self.case.is_some() && self.angles.is_some() {
            return Err(CliError::Usage(
                "give either --case or --angles, not both".into(),
            ));
        }
        Ok(())
    }
}
