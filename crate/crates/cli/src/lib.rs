//! File formats, benchmark batches and SVG output behind the `bangbang`
//! command.

pub mod bench;
pub mod format;
pub mod render;
pub mod scene_file;
pub mod traj_file;

pub use bench::{run_bench, BenchSpec, BenchStats, Method, RunRow};
pub use render::{render_svg, Artifacts, RenderMode};
pub use scene_file::{load_scene, parse_scene, LoadedScene, SceneFile};
pub use traj_file::{read_trajectory, write_trajectory, TrajectoryFile};

use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {err}")]
    Io { path: PathBuf, err: std::io::Error },
    #[error("{origin}:{line}:{column}: {msg}")]
    Parse { origin: String, line: usize, column: usize, msg: String },
    #[error("{field}: {msg}")]
    Invalid { field: String, msg: String },
    #[error(transparent)]
    Core(#[from] bangbang::Error),
}

impl CliError {
    pub(crate) fn invalid(field: impl Into<String>, msg: impl Into<String>) -> Self {
        CliError::Invalid { field: field.into(), msg: msg.into() }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), err: source }
    }

    pub(crate) fn parse(origin: &str, e: &serde_json::Error) -> Self {
        CliError::Parse { origin: origin.to_string(), line: e.line(), column: e.column(), msg: e.to_string() }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
