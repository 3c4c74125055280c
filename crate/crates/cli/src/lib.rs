//! Batch front-end: `classify`, `tile`, `geodesics` and `pipeline`.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 usage error, 3 unsupported case,
//! 4 numerical failure (non-closure, no generic configuration).

pub mod args;
pub mod commands;
pub mod config;

use std::ffi::OsString;
use std::path::Path;

use clap::Parser;
use orbifold_core::Error;

pub use args::{Cli, Command};
pub use config::{FileConfig, RunConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error(transparent)]
    Io(#[from] anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(e) => match e {
                Error::Domain(_) | Error::NotSpherical(_) => 2,
                Error::NoTiling { .. } | Error::UnsupportedCase { .. } => 3,
                Error::NonClosing { .. } | Error::NonGeneric(_) | Error::UndefinedFit(_) => 4,
            },
            CliError::Io(_) => 1,
        }
    }
}

/// Writes through a sibling temporary file so readers never see a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> anyhow::Result<()> {
    use anyhow::Context;
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(format!(".tmp{}", std::process::id()));
    std::fs::write(&tmp, contents).with_context(|| format!("writing {}", path.display()))?;
    std::fs::rename(&tmp, path).with_context(|| format!("renaming onto {}", path.display()))?;
    Ok(())
}

fn emit(cfg: &RunConfig, text: &str) -> Result<(), CliError> {
    match &cfg.out {
        Some(path) => Ok(write_atomic(path, text)?),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            let tail = if text.ends_with('\n') { "" } else { "\n" };
            match stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.write_all(tail.as_bytes()))
            {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Io(e.into())),
                _ => Ok(()),
            }
        }
    }
}

pub fn execute(cli: &Cli) -> Result<(), CliError> {
    let file = cli.config.as_deref().map(FileConfig::load).transpose()?;
    let cfg = cli.command.resolve(file).map_err(CliError::Usage)?;
    cfg.validate()?;
    match &cli.command {
        Command::Classify { .. } => emit(&cfg, &commands::cmd_classify(&cfg)?),
        Command::Tile { .. } => emit(&cfg, &commands::cmd_tile(&cfg)?),
        Command::Geodesics { .. } => emit(&cfg, &commands::cmd_geodesics(&cfg)?),
        Command::Pipeline { plot, .. } => {
            let (main, plot_data) = commands::cmd_pipeline(&cfg)?;
            if let Some(path) = plot {
                write_atomic(path, &plot_data)?;
            }
            emit(&cfg, &main)
        }
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
