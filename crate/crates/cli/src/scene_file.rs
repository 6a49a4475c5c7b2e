//! JSON scene format.
//!
//! ```json
//! {
//!   "n_dims": 2,
//!   "q_bounds": [[0, 800], [0, 800]],
//!   "v_bounds": [[-10, 10], [-10, 10]],
//!   "accel_bounds": [[-0.2, 0.2], [-0.2, 0.2]],
//!   "robot": {"type": "point", "radius": 0},
//!   "obstacles": [[[0, 260], [400, 260], [400, 290], [0, 290]]],
//!   "query": {"start": {"q": [60, 60]}, "goal": {"q": [740, 740]}},
//!   "resolution": 10
//! }
//! ```
//!
//! Chains use `{"type": "chain", "link_length": 1, "base": [0, 0]}`; the
//! link count is `n_dims`. Omitted velocities in the query are zero and an
//! omitted resolution falls back to the planner default.

use crate::{CliError, CliResult};
use bangbang::planners::default_resolution;
use bangbang::world::{PlanarChain, Polygon};
use bangbang::{AccelBounds, PhaseState, RobotModel, Scene};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub n_dims: usize,
    pub q_bounds: Vec<[f64; 2]>,
    pub v_bounds: Vec<[f64; 2]>,
    pub accel_bounds: Vec<[f64; 2]>,
    pub robot: RobotSpec,
    #[serde(default)]
    pub obstacles: Vec<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub query: Option<QuerySpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resolution: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum RobotSpec {
    Point {
        #[serde(default)]
        radius: f64,
    },
    Chain {
        link_length: f64,
        #[serde(default)]
        base: [f64; 2],
        #[serde(default)]
        self_collision: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateSpec {
    pub q: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuerySpec {
    pub start: StateSpec,
    pub goal: StateSpec,
}

/// A validated scene plus the optional query and collision resolution
/// stored alongside it.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedScene {
    pub name: Option<String>,
    pub scene: Scene,
    pub query: Option<(PhaseState, PhaseState)>,
    pub resolution: f64,
}

impl LoadedScene {
    pub fn require_query(&self) -> CliResult<(PhaseState, PhaseState)> {
        self.query.clone().ok_or_else(|| CliError::invalid("query", "scene file has no start/goal query"))
    }
}

impl StateSpec {
    fn to_state(&self, n: usize, field: &str) -> CliResult<PhaseState> {
        if self.q.len() != n {
            return Err(CliError::invalid(format!("{field}.q"), format!("expected {n} values, got {}", self.q.len())));
        }
        let v = self.v.clone().unwrap_or_else(|| vec![0.0; n]);
        PhaseState::new(self.q.clone(), v).map_err(|e| CliError::invalid(format!("{field}.v"), e.to_string()))
    }
}

impl From<&PhaseState> for StateSpec {
    fn from(x: &PhaseState) -> Self {
        StateSpec { q: x.q.clone(), v: Some(x.v.clone()) }
    }
}

fn interval(field: &str, i: usize, b: [f64; 2]) -> CliResult<(f64, f64)> {
    if !(b[0].is_finite() && b[1].is_finite() && b[0] < b[1]) {
        return Err(CliError::invalid(format!("{field}[{i}]"), format!("[{}, {}] is not an interval", b[0], b[1])));
    }
    Ok((b[0], b[1]))
}

impl SceneFile {
    pub fn validate(&self) -> CliResult<LoadedScene> {
        let n = self.n_dims;
        if n == 0 {
            return Err(CliError::invalid("n_dims", "must be at least 1"));
        }
        for (field, len) in [
            ("q_bounds", self.q_bounds.len()),
            ("v_bounds", self.v_bounds.len()),
            ("accel_bounds", self.accel_bounds.len()),
        ] {
            if len != n {
                return Err(CliError::invalid(field, format!("expected {n} entries, got {len}")));
            }
        }
        let q_bounds = self
            .q_bounds
            .iter()
            .enumerate()
            .map(|(i, &b)| interval("q_bounds", i, b))
            .collect::<CliResult<Vec<_>>>()?;
        let v_bounds = self
            .v_bounds
            .iter()
            .enumerate()
            .map(|(i, &b)| interval("v_bounds", i, b))
            .collect::<CliResult<Vec<_>>>()?;
        let accel = self
            .accel_bounds
            .iter()
            .enumerate()
            .map(|(i, b)| {
                AccelBounds::new(b[0], b[1]).map_err(|e| CliError::invalid(format!("accel_bounds[{i}]"), e.to_string()))
            })
            .collect::<CliResult<Vec<_>>>()?;
        let obstacles = self
            .obstacles
            .iter()
            .enumerate()
            .map(|(i, vs)| {
                Polygon::new(vs.clone()).map_err(|e| CliError::invalid(format!("obstacles[{i}]"), e.to_string()))
            })
            .collect::<CliResult<Vec<_>>>()?;
        let robot = match self.robot {
            RobotSpec::Point { radius } => RobotModel::Point { radius },
            RobotSpec::Chain { link_length, base, self_collision } => {
                let mut chain = PlanarChain::new(n, link_length, base);
                chain.self_collision = self_collision;
                chain.joint_limit = q_bounds.iter().map(|&(lo, hi)| lo.abs().max(hi.abs())).fold(0.0, f64::max);
                RobotModel::Chain(chain)
            }
        };
        let scene = Scene::new(q_bounds, v_bounds, accel, obstacles, robot)
            .map_err(|e| CliError::invalid("robot", e.to_string()))?;
        let query = match &self.query {
            Some(qs) => Some((qs.start.to_state(n, "query.start")?, qs.goal.to_state(n, "query.goal")?)),
            None => None,
        };
        let resolution = match self.resolution {
            Some(r) if !(r > 0.0 && r.is_finite()) => return Err(CliError::invalid("resolution", "must be positive")),
            Some(r) => r,
            None => default_resolution(&scene),
        };
        Ok(LoadedScene { name: self.name.clone(), scene, query, resolution })
    }
}

/// Parses and validates scene JSON; `origin` names the source in errors.
pub fn parse_scene(text: &str, origin: &str) -> CliResult<LoadedScene> {
    let file: SceneFile = serde_json::from_str(text).map_err(|e| CliError::parse(origin, &e))?;
    file.validate()
}

pub fn load_scene(path: impl AsRef<Path>) -> CliResult<LoadedScene> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_scene(&text, &path.display().to_string())
}
