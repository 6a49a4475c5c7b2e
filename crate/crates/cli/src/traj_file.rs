//! JSON trajectory format: `{"x0": {"q", "v"}, "axes": [[{"a", "dt"}]], "duration"}`.

use crate::scene_file::StateSpec;
use crate::{CliError, CliResult};
use bangbang::{Control1, ControlSegment, PhaseState, Trajectory};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentSpec {
    pub a: f64,
    pub dt: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrajectoryFile {
    pub x0: StateSpec,
    pub axes: Vec<Vec<SegmentSpec>>,
    pub duration: f64,
}

impl From<&Trajectory> for TrajectoryFile {
    fn from(t: &Trajectory) -> Self {
        TrajectoryFile {
            x0: StateSpec::from(t.start()),
            axes: t
                .axes()
                .iter()
                .map(|ax| ax.segments.iter().map(|s| SegmentSpec { a: s.accel, dt: s.duration }).collect())
                .collect(),
            duration: t.duration(),
        }
    }
}

impl TrajectoryFile {
    pub fn to_trajectory(&self) -> CliResult<Trajectory> {
        let n = self.x0.q.len();
        let v = self.x0.v.clone().unwrap_or_else(|| vec![0.0; n]);
        let start = PhaseState::new(self.x0.q.clone(), v).map_err(|e| CliError::invalid("x0", e.to_string()))?;
        let axes = self
            .axes
            .iter()
            .map(|ax| Control1::new(ax.iter().map(|s| ControlSegment::new(s.a, s.dt)).collect()))
            .collect();
        let traj = Trajectory::new(start, axes).map_err(|e| CliError::invalid("axes", e.to_string()))?;
        if (traj.duration() - self.duration).abs() > 1e-9 * self.duration.abs().max(1.0) {
            return Err(CliError::invalid(
                "duration",
                format!("{} disagrees with the segments, which sum to {}", self.duration, traj.duration()),
            ));
        }
        Ok(traj)
    }
}

pub fn trajectory_to_json(traj: &Trajectory) -> String {
    let mut s = serde_json::to_string_pretty(&TrajectoryFile::from(traj)).expect("finite trajectory serializes");
    s.push('\n');
    s
}

pub fn trajectory_from_json(text: &str, origin: &str) -> CliResult<Trajectory> {
    let file: TrajectoryFile = serde_json::from_str(text).map_err(|e| CliError::parse(origin, &e))?;
    file.to_trajectory()
}

pub fn write_trajectory(path: impl AsRef<Path>, traj: &Trajectory) -> CliResult<()> {
    let path = path.as_ref();
    std::fs::write(path, trajectory_to_json(traj)).map_err(|e| CliError::io(path, e))
}

pub fn read_trajectory(path: impl AsRef<Path>) -> CliResult<Trajectory> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    trajectory_from_json(&text, &path.display().to_string())
}
