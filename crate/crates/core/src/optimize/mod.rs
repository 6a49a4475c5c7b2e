//! Shortcut optimization of trajectories and the lifting of geometric paths
//! into rest-to-rest trajectories.

mod transform;

pub use transform::bang_bang_transform;

use crate::error::{Error, Result};
use crate::planners::{
    bb_rrt_bidirectional, default_resolution, rrt_connect_geometric, GeometricParams, Outcome, PlanQuery, PlanResult,
    PlanStats,
};
use crate::rng::seeded;
use crate::state::PhaseState;
use crate::steering::steer_nd;
use crate::trajectory::Trajectory;
use crate::world::{trajectory_free, Scene};
use rand::Rng;
use std::time::Instant;

/// How shortcut intervals are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IntervalRule {
    /// Two uniform times and a fair coin.
    #[default]
    RandomCoin,
    /// Halton points in bases 2, 3 (times) and 5 (coin).
    Halton,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShortcutConfig {
    pub max_iterations: usize,
    /// Attempts without enough improvement before stopping.
    pub stall_window: usize,
    /// Cumulative reduction that counts as enough improvement.
    pub stall_epsilon: f64,
    pub seed: u64,
    pub resolution: f64,
    pub rule: IntervalRule,
}

impl ShortcutConfig {
    pub fn for_scene(scene: &Scene) -> Self {
        Self {
            max_iterations: 10_000,
            stall_window: 200,
            stall_epsilon: 0.1,
            seed: 0,
            resolution: default_resolution(scene),
            rule: IntervalRule::RandomCoin,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 || self.stall_window == 0 {
            return Err(Error::InvalidArgument("iteration counts must be positive".into()));
        }
        if !(self.stall_epsilon > 0.0 && self.resolution > 0.0) {
            return Err(Error::InvalidArgument("stall epsilon and resolution must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShortcutRecord {
    pub t1: f64,
    pub t2: f64,
    pub accepted: bool,
    /// Trajectory duration after this attempt.
    pub new_duration: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct OptimizeTrace {
    pub initial_duration: f64,
    pub records: Vec<ShortcutRecord>,
    pub checks: usize,
}

impl OptimizeTrace {
    pub fn accepted(&self) -> usize {
        self.records.iter().filter(|r| r.accepted).count()
    }
}

/// Relative gain below which a replacement counts as no improvement.
pub const MIN_GAIN: f64 = 1e-9;

/// Result of one shortcut attempt.
#[derive(Debug, Clone, PartialEq)]
pub enum Shortcut {
    Accepted(Trajectory),
    Rejected,
}

/// Tries to replace `traj` on `[t1, t2]` with the direct bang-bang steer.
/// Returns the outcome and the collision checks spent.
pub fn shortcut_step(scene: &Scene, traj: &Trajectory, t1: f64, t2: f64, resolution: f64) -> Result<(Shortcut, usize)> {
    if !(0.0 <= t1 && t1 < t2 && t2 <= traj.duration()) {
        return Err(Error::InvalidArgument(format!(
            "shortcut interval [{t1}, {t2}] is not inside [0, {}]",
            traj.duration()
        )));
    }
    let x1 = traj.evaluate(t1)?;
    let x2 = traj.evaluate(t2)?;
    let plan = steer_nd(&x1, &x2, scene.accel())?;
    if !(plan.arrival_time < t2 - t1 - MIN_GAIN * (t2 - t1).max(1.0)) {
        return Ok((Shortcut::Rejected, 0));
    }
    let mid = Trajectory::from_plan(x1, plan);
    let report = trajectory_free(scene, &mid, resolution)?;
    if !report.free {
        return Ok((Shortcut::Rejected, report.checks_performed));
    }
    match traj.splice(t1, t2, &mid) {
        Ok(t) => Ok((Shortcut::Accepted(t), report.checks_performed)),
        // Endpoint drift beyond tolerance: keep the original.
        Err(Error::ContractViolation(_)) => Ok((Shortcut::Rejected, report.checks_performed)),
        Err(e) => Err(e),
    }
}

/// Interval selection from two uniform draws on `[0, t_f]` and a coin.
pub fn interval_from_draws(a: f64, b: f64, heads: bool, t_f: f64) -> (f64, f64) {
    if a < b {
        (a, b)
    } else if heads {
        (0.0, b)
    } else {
        (a, t_f)
    }
}

/// Draws a shortcut interval inside `[0, t_f]`.
pub fn pick_interval(rng: &mut impl Rng, t_f: f64) -> (f64, f64) {
    let a = rng.gen_range(0.0..=t_f);
    let b = rng.gen_range(0.0..=t_f);
    interval_from_draws(a, b, rng.gen_bool(0.5), t_f)
}

/// Radical inverse of `k` in `base`.
pub fn halton(mut k: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while k > 0 {
        f /= base as f64;
        r += f * (k % base) as f64;
        k /= base;
    }
    r
}

fn halton_interval(k: u64, t_f: f64) -> (f64, f64) {
    interval_from_draws(halton(k, 2) * t_f, halton(k, 3) * t_f, halton(k, 5) < 0.5, t_f)
}

/// Repeated shortcutting until the iteration budget runs out or the
/// duration stops improving by `stall_epsilon` per `stall_window` attempts.
pub fn optimize_trajectory(
    scene: &Scene,
    traj: &Trajectory,
    config: &ShortcutConfig,
) -> Result<(Trajectory, OptimizeTrace)> {
    config.validate()?;
    let report = trajectory_free(scene, traj, config.resolution)?;
    let mut trace =
        OptimizeTrace { initial_duration: traj.duration(), records: Vec::new(), checks: report.checks_performed };
    if !report.free {
        return Err(Error::InvalidArgument(format!(
            "trajectory to optimize collides at t = {}",
            report.first_hit_time.unwrap_or(f64::NAN)
        )));
    }
    let mut cur = traj.clone();
    let mut rng = seeded(config.seed);
    let mut reference = cur.duration();
    let mut stalled = 0;
    for k in 0..config.max_iterations {
        let t_f = cur.duration();
        if t_f <= 0.0 {
            break;
        }
        let (t1, t2) = match config.rule {
            IntervalRule::RandomCoin => pick_interval(&mut rng, t_f),
            IntervalRule::Halton => halton_interval(k as u64 + 1, t_f),
        };
        let accepted = if t1 < t2 {
            let (outcome, checks) = shortcut_step(scene, &cur, t1, t2, config.resolution)?;
            trace.checks += checks;
            match outcome {
                Shortcut::Accepted(t) => {
                    cur = t;
                    true
                }
                Shortcut::Rejected => false,
            }
        } else {
            false
        };
        trace.records.push(ShortcutRecord { t1, t2, accepted, new_duration: cur.duration() });
        if reference - cur.duration() > config.stall_epsilon {
            reference = cur.duration();
            stalled = 0;
        } else {
            stalled += 1;
            if stalled >= config.stall_window {
                break;
            }
        }
    }
    Ok((cur, trace))
}

fn merge_stats(into: &mut PlanStats, from: &PlanStats) {
    into.iterations += from.iterations;
    into.nodes += from.nodes;
    into.collision_checks += from.collision_checks;
}

/// Geometric path → bang-bang transform → shortcut optimization, for a
/// rest-to-rest query between configurations.
pub fn lift_and_optimize(
    scene: &Scene,
    q_start: &[f64],
    q_goal: &[f64],
    planner: &GeometricParams,
    shortcut: &ShortcutConfig,
) -> Result<PlanResult> {
    shortcut.validate()?;
    let clock = Instant::now();
    let geo = rrt_connect_geometric(scene, q_start, q_goal, planner)?;
    let mut stats = geo.stats.clone();
    let Some(path) = geo.path else {
        stats.wall_time = clock.elapsed().as_secs_f64();
        return Ok(PlanResult::failure(stats));
    };
    let lifted = bang_bang_transform(&path, scene.accel())?;
    stats.initial_traj_time = Some(lifted.duration());
    let (traj, trace) = optimize_trajectory(scene, &lifted, shortcut)?;
    stats.collision_checks += trace.checks;
    stats.wall_time = clock.elapsed().as_secs_f64();
    Ok(PlanResult { outcome: Outcome::Solution, trajectory: Some(traj), stats })
}

/// BB-RRT followed by shortcut optimization of its trajectory.
pub fn plan_and_optimize(query: &PlanQuery, shortcut: &ShortcutConfig) -> Result<PlanResult> {
    let clock = Instant::now();
    let raw = bb_rrt_bidirectional(query)?;
    let Some(initial) = &raw.trajectory else {
        return Ok(raw);
    };
    let (traj, trace) = optimize_trajectory(query.scene, initial, shortcut)?;
    let mut stats = PlanStats { initial_traj_time: Some(initial.duration()), ..PlanStats::default() };
    merge_stats(&mut stats, &raw.stats);
    stats.collision_checks += trace.checks;
    stats.wall_time = clock.elapsed().as_secs_f64();
    Ok(PlanResult { outcome: Outcome::Solution, trajectory: Some(traj), stats })
}

/// Rest-to-rest states at the two configurations.
pub fn rest_query(q_start: &[f64], q_goal: &[f64]) -> (PhaseState, PhaseState) {
    (PhaseState::at_rest(q_start.to_vec()), PhaseState::at_rest(q_goal.to_vec()))
}
