use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{Curvature, FileConfig, Format, Model, RunConfig};

#[derive(Debug, Parser)]
#[command(
    name = "orbifold",
    version,
    about = "Orbit-space classification, tilings, geodesic censuses and growth bounds"
)]
pub struct Cli {
    /// TOML file with default settings; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the classification tables.
    Classify {
        #[arg(long, value_enum)]
        curvature: Option<Curvature>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Build the tiling of one case.
    Tile {
        #[command(flatten)]
        case: CaseArgs,
        /// Rings to build for flat cases.
        #[arg(long)]
        n_max: Option<u32>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Enumerate critical geodesics for one generic configuration.
    Geodesics {
        #[command(flatten)]
        case: CaseArgs,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Tile, enumerate over several seeds and check the growth bound.
    Pipeline {
        #[command(flatten)]
        case: CaseArgs,
        #[command(flatten)]
        run: RunArgs,
        /// Number of configurations, from `seed` upward.
        #[arg(long)]
        seeds: Option<u32>,
        /// Also write x–y plot series (JSON) here.
        #[arg(long)]
        plot: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
pub struct CaseArgs {
    /// Case id from the classification tables.
    #[arg(long = "case")]
    pub case: Option<u32>,
    /// Boundary corner angles as multiples of π, e.g. `1/2 1/3 1/4`.
    #[arg(long, num_args = 1.., value_name = "FRACTION")]
    pub angles: Option<Vec<String>>,
    /// Family parameter, e.g. `p=3` or `alpha=4` (angle π/4).
    #[arg(long = "param", value_name = "NAME=VALUE")]
    pub params: Vec<String>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long)]
    pub n_max: Option<u32>,
    /// Smallest index of the endpoint form.
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<i64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum)]
    pub model: Option<Model>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Predicate tolerance; defaults to $ORBIFOLD_TOLERANCE or 1e-9.
    #[arg(long)]
    pub tolerance: Option<f64>,
}

fn parse_params(raw: &[String]) -> Result<Vec<(String, i64)>, String> {
    raw.iter()
        .map(|s| {
            let (k, v) = s
                .split_once('=')
                .ok_or_else(|| format!("expected NAME=VALUE, got `{s}`"))?;
            let v = v
                .trim()
                .parse::<i64>()
                .map_err(|e| format!("bad value in `{s}`: {e}"))?;
            Ok((k.trim().to_string(), v))
        })
        .collect()
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Classify { .. } => "classify",
            Command::Tile { .. } => "tile",
            Command::Geodesics { .. } => "geodesics",
            Command::Pipeline { .. } => "pipeline",
        }
    }

    /// Defaults, then the config file, then flags.
    pub fn resolve(&self, file: Option<FileConfig>) -> Result<RunConfig, String> {
        let mut cfg = RunConfig::defaults(self.name());
        if let Some(f) = file {
            cfg.apply(f);
        }
        let (case, run, output) = match self {
            Command::Classify { curvature, output } => {
                if let Some(c) = curvature {
                    cfg.curvature = *c;
                }
                (None, None, output)
            }
            Command::Tile {
                case,
                n_max,
                output,
            } => {
                if let Some(n) = n_max {
                    cfg.n_max = *n;
                }
                (Some(case), None, output)
            }
            Command::Geodesics { case, run, output } => (Some(case), Some(run), output),
            Command::Pipeline {
                case,
                run,
                seeds,
                output,
                ..
            } => {
                if let Some(s) = seeds {
                    cfg.seeds = *s;
                }
                (Some(case), Some(run), output)
            }
        };
        if let Some(c) = case {
            if c.case.is_some() || c.angles.is_some() {
                cfg.case = c.case;
                cfg.angles = c.angles.clone();
            }
            cfg.params.extend(parse_params(&c.params)?);
        }
        if let Some(r) = run {
            cfg.n_max = r.n_max.unwrap_or(cfg.n_max);
            cfg.m = r.m.unwrap_or(cfg.m);
            cfg.seed = r.seed.unwrap_or(cfg.seed);
            cfg.model = r.model.unwrap_or(cfg.model);
        }
        cfg.format = output.format.unwrap_or(cfg.format);
        cfg.tolerance = output.tolerance.unwrap_or(cfg.tolerance);
        if output.out.is_some() {
            cfg.out = output.out.clone();
        }
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("orbifold").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn flags_win_over_file() {
        let file: FileConfig =
            toml::from_str("seed = 3\nm = -2\nn_max = 4\nparams = { p = 5 }").unwrap();
        let cli = parse(&["pipeline", "--case", "4", "--m", "-1", "--param", "p=3"]);
        let cfg = cli.command.resolve(Some(file)).unwrap();
        assert_eq!((cfg.seed, cfg.m, cfg.n_max), (3, -1, 4));
        assert_eq!(cfg.params.get("p"), Some(&3));
        assert_eq!(cfg.case, Some(4));
    }

    #[test]
    fn defaults_without_file() {
        let cfg = parse(&["geodesics", "--case", "6"])
            .command
            .resolve(None)
            .unwrap();
        assert_eq!((cfg.seed, cfg.m, cfg.n_max, cfg.seeds), (0, 0, 20, 10));
        assert_eq!(cfg.format, Format::Json);
        assert!(Cli::try_parse_from(["orbifold", "classify", "--format", "xml"]).is_err());
    }

    #[test]
    fn malformed_param() {
        let cli = parse(&["pipeline", "--case", "4", "--param", "p3"]);
        assert!(cli.command.resolve(None).is_err());
    }

    #[test]
    fn angles_parse_as_fractions() {
        let cli = parse(&["tile", "--angles", "1/2", "1/3", "1/4"]);
        let cfg = cli.command.resolve(None).unwrap();
        assert_eq!(crate::commands::resolve_case(&cfg).unwrap().case_id, 13);
        let both = parse(&["tile", "--case", "6", "--angles", "1/2"])
            .command
            .resolve(None)
            .unwrap();
        assert!(both.validate().is_err());
    }
}
