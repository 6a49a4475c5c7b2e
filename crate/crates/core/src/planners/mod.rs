//! Sampling-based planners: the bang-bang bidirectional RRT and two
//! baselines (constant-control kinodynamic RRT, geometric RRT-Connect).

mod baseline;
mod bb_rrt;
mod rrt_connect;
mod tree;

pub use baseline::{baseline_rrt_bidirectional, BaselineParams};
pub use bb_rrt::{
    bb_nearest, bb_rrt_bidirectional, bb_rrt_explore, bb_steer_checked, bb_steer_checked_reverse, BbRrtRun,
    CheckedSteer, CHECKS_PER_NODE,
};
pub use rrt_connect::{rrt_connect_geometric, GeometricParams, GeometricPlan};
pub use tree::{Tree, TreeNode, TreeRole};

use crate::error::{Error, Result};
use crate::state::PhaseState;
use crate::steering::{rho1, rho2, AccelBounds};
use crate::trajectory::Trajectory;
use crate::world::{config_free, RobotModel, Scene};
use rand::Rng;

/// Distance estimate used for nearest-neighbour queries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Metric {
    /// Slowest per-axis minimum time.
    #[default]
    Rho1,
    /// Synchronized arrival time.
    Rho2,
}

impl Metric {
    pub fn eval(self, from: &PhaseState, to: &PhaseState, bounds: &[AccelBounds]) -> f64 {
        match self {
            Metric::Rho1 => rho1(from, to, bounds),
            Metric::Rho2 => rho2(from, to, bounds),
        }
    }
}

/// Collision resolution used when none is given: 4 length units for
/// vehicles, 0.05 rad per joint for chains.
pub fn default_resolution(scene: &Scene) -> f64 {
    match scene.robot() {
        RobotModel::Point { .. } => 4.0,
        RobotModel::Chain(_) => 0.05,
    }
}

#[derive(Debug, Clone)]
pub struct PlanQuery<'a> {
    pub scene: &'a Scene,
    pub start: PhaseState,
    pub goal: PhaseState,
    pub max_iterations: usize,
    pub seed: u64,
    pub metric: Metric,
    pub resolution: f64,
}

impl<'a> PlanQuery<'a> {
    pub fn new(scene: &'a Scene, start: PhaseState, goal: PhaseState) -> Self {
        Self {
            scene,
            start,
            goal,
            max_iterations: 10_000,
            seed: 0,
            metric: Metric::Rho1,
            resolution: default_resolution(scene),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_iterations(mut self, k: usize) -> Self {
        self.max_iterations = k;
        self
    }

    pub fn with_metric(mut self, metric: Metric) -> Self {
        self.metric = metric;
        self
    }

    pub fn with_resolution(mut self, resolution: f64) -> Self {
        self.resolution = resolution;
        self
    }

    pub(crate) fn validate(&self) -> Result<()> {
        let n = self.scene.dim();
        self.start.check_dim(n)?;
        self.goal.check_dim(n)?;
        if !(self.resolution > 0.0) {
            return Err(Error::InvalidArgument("collision resolution must be positive".into()));
        }
        for (name, x) in [("start", &self.start), ("goal", &self.goal)] {
            if !state_valid(self.scene, x) {
                return Err(Error::InvalidArgument(format!("{name} state is in collision or out of bounds")));
            }
        }
        Ok(())
    }
}

pub(crate) fn state_valid(scene: &Scene, x: &PhaseState) -> bool {
    config_free(scene, &x.q) && x.v.iter().zip(scene.v_bounds()).all(|(&v, &(lo, hi))| v >= lo && v <= hi)
}

pub(crate) fn sample_state(scene: &Scene, rng: &mut impl Rng) -> PhaseState {
    let q = scene.q_bounds().iter().map(|&(lo, hi)| rng.gen_range(lo..hi)).collect();
    let v = scene.v_bounds().iter().map(|&(lo, hi)| rng.gen_range(lo..hi)).collect();
    PhaseState { q, v }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Solution,
    Failure,
}

/// Per-run statistics.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PlanStats {
    pub iterations: usize,
    pub nodes: usize,
    pub collision_checks: usize,
    /// Seconds spent in the planning loop.
    pub wall_time: f64,
    /// Largest state jump where threshold-connected trees meet.
    pub connection_gap: Option<f64>,
    /// Time along the returned trajectory where those trees meet.
    pub connection_time: Option<f64>,
    /// Duration of the trajectory before optimization, when one ran.
    pub initial_traj_time: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlanResult {
    pub outcome: Outcome,
    pub trajectory: Option<Trajectory>,
    pub stats: PlanStats,
}

impl PlanResult {
    pub fn failure(stats: PlanStats) -> Self {
        Self { outcome: Outcome::Failure, trajectory: None, stats }
    }

    pub fn solved(&self) -> bool {
        self.outcome == Outcome::Solution
    }

    /// Execution time of the returned trajectory.
    pub fn traj_time(&self) -> Option<f64> {
        self.trajectory.as_ref().map(Trajectory::duration)
    }
}
