use super::tree::{Tree, TreeRole};
use super::{sample_state, Metric, Outcome, PlanQuery, PlanResult, PlanStats};
use crate::error::{Error, Result};
use crate::rng::seeded;
use crate::state::PhaseState;
use crate::steering::{rho1_capped, steer_nd, AccelBounds};
use crate::trajectory::Trajectory;
use crate::world::{sweep, Direction, Scene};
use std::time::Instant;

/// Tree nodes are inserted along a new edge once per this many collision
/// checks, plus one at the edge's end.
pub const CHECKS_PER_NODE: usize = 12;

/// Index of the point closest to `target` under `metric`, measured from the
/// point to the target. Ties go to the lowest index.
pub fn bb_nearest(points: &[PhaseState], target: &PhaseState, metric: Metric, bounds: &[AccelBounds]) -> Result<usize> {
    nearest_by(points.iter(), |p| metric.eval(p, target, bounds))
}

fn nearest_by<'a>(points: impl Iterator<Item = &'a PhaseState>, cost: impl Fn(&PhaseState) -> f64) -> Result<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, p) in points.enumerate() {
        let c = cost(p);
        if best.is_none_or(|(_, b)| c < b) {
            best = Some((i, c));
        }
    }
    best.map(|(i, _)| i).ok_or_else(|| Error::InvalidArgument("nearest-neighbour query on an empty set".into()))
}

/// Result of a collision-checked steering attempt.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckedSteer {
    /// Furthest collision-free state along the steer.
    pub reached: PhaseState,
    /// Free portion of the steer, forward in time.
    pub trajectory: Trajectory,
    pub reached_target: bool,
    pub checks: usize,
    /// Passing sample times on `trajectory`, in the order they were checked.
    pub free_times: Vec<f64>,
}

impl CheckedSteer {
    /// At least one collision-free step was taken.
    pub fn progressed(&self) -> bool {
        self.free_times.len() >= 2 && self.trajectory.duration() > 0.0
    }
}

/// Steers `from → to` and walks the result forward, stopping at the last
/// free sample before the first violation.
pub fn bb_steer_checked(scene: &Scene, from: &PhaseState, to: &PhaseState, resolution: f64) -> Result<CheckedSteer> {
    let traj = Trajectory::from_plan(from.clone(), steer_nd(from, to, scene.accel())?);
    let sw = sweep(scene, &traj, resolution, Direction::Forward);
    if sw.hit_time.is_none() {
        return Ok(CheckedSteer {
            reached: to.clone(),
            trajectory: traj,
            reached_target: true,
            checks: sw.checks,
            free_times: sw.free_times,
        });
    }
    let t_free = sw.free_times.last().copied().unwrap_or(0.0);
    let trajectory = traj.restrict(0.0, t_free)?;
    let reached = if sw.free_times.is_empty() { from.clone() } else { trajectory.end_state() };
    Ok(CheckedSteer { reached, trajectory, reached_target: false, checks: sw.checks, free_times: sw.free_times })
}

/// Time-reversed counterpart used by goal trees: steers `from → into` and
/// walks backward from `into`, keeping the free tail. `reached` is the
/// earliest free state, from which the returned trajectory leads to `into`.
pub fn bb_steer_checked_reverse(
    scene: &Scene,
    into: &PhaseState,
    from: &PhaseState,
    resolution: f64,
) -> Result<CheckedSteer> {
    let traj = Trajectory::from_plan(from.clone(), steer_nd(from, into, scene.accel())?);
    let total = traj.duration();
    let sw = sweep(scene, &traj, resolution, Direction::Backward);
    if sw.hit_time.is_none() {
        return Ok(CheckedSteer {
            reached: from.clone(),
            trajectory: traj,
            reached_target: true,
            checks: sw.checks,
            free_times: sw.free_times,
        });
    }
    let t_free = sw.free_times.last().copied().unwrap_or(total);
    let trajectory = traj.restrict(t_free, total)?;
    let reached = if sw.free_times.is_empty() { into.clone() } else { trajectory.start().clone() };
    let free_times = sw.free_times.iter().map(|t| t - t_free).collect();
    Ok(CheckedSteer { reached, trajectory, reached_target: false, checks: sw.checks, free_times })
}

/// Steers from tree node `node` toward `target` in the tree's own time
/// direction.
fn steer_from_node(tree: &Tree, node: usize, target: &PhaseState, scene: &Scene, res: f64) -> Result<CheckedSteer> {
    let x = &tree.nodes[node].state;
    match tree.role {
        TreeRole::Start => bb_steer_checked(scene, x, target, res),
        TreeRole::Goal => bb_steer_checked_reverse(scene, x, target, res),
    }
}

fn nearest_in(tree: &Tree, target: &PhaseState, metric: Metric, bounds: &[AccelBounds]) -> Result<usize> {
    if metric == Metric::Rho1 {
        // A node stops being scored as soon as one axis is no better than
        // the best so far; ties keep the lower index either way.
        let mut best: Option<(usize, f64)> = None;
        for (i, p) in tree.states().enumerate() {
            let cap = best.map_or(f64::INFINITY, |b| b.1);
            let c = match tree.role {
                TreeRole::Start => rho1_capped(p, target, bounds, cap),
                TreeRole::Goal => rho1_capped(target, p, bounds, cap),
            };
            if c < cap {
                best = Some((i, c));
            }
        }
        return best
            .map(|(i, _)| i)
            .ok_or_else(|| Error::InvalidArgument("nearest-neighbour query on an empty set".into()));
    }
    match tree.role {
        TreeRole::Start => nearest_by(tree.states(), |p| metric.eval(p, target, bounds)),
        TreeRole::Goal => nearest_by(tree.states(), |p| metric.eval(target, p, bounds)),
    }
}

/// Adds the free part of `steer` below `node`, with intermediate nodes every
/// [`CHECKS_PER_NODE`] samples. Returns the index of the node at `reached`.
fn insert_edge(tree: &mut Tree, node: usize, steer: &CheckedSteer) -> Result<usize> {
    let traj = &steer.trajectory;
    let times = &steer.free_times;
    let last = times.len() - 1;
    let mut marks: Vec<usize> = (CHECKS_PER_NODE..last).step_by(CHECKS_PER_NODE).collect();
    marks.push(last);
    let mut parent = node;
    // Walk-order time of the parent node on `traj`.
    let mut t_parent = times[0];
    for (k, &m) in marks.iter().enumerate() {
        let t = times[m];
        let state = if k + 1 == marks.len() { steer.reached.clone() } else { traj.evaluate(t)? };
        let edge = match tree.role {
            TreeRole::Start => traj.restrict(t_parent, t)?,
            TreeRole::Goal => traj.restrict(t, t_parent)?,
        };
        parent = tree.add(state, parent, edge);
        t_parent = t;
    }
    Ok(parent)
}

/// Planner output together with the explored trees.
#[derive(Debug, Clone)]
pub struct BbRrtRun {
    pub result: PlanResult,
    pub start_tree: Tree,
    pub goal_tree: Tree,
}

/// Bidirectional RRT with exact bang-bang steering.
pub fn bb_rrt_bidirectional(query: &PlanQuery) -> Result<PlanResult> {
    bb_rrt_explore(query).map(|run| run.result)
}

/// As [`bb_rrt_bidirectional`], also returning both trees.
pub fn bb_rrt_explore(query: &PlanQuery) -> Result<BbRrtRun> {
    query.validate()?;
    let clock = Instant::now();
    let scene = query.scene;
    let bounds = scene.accel();
    let res = query.resolution;
    let mut rng = seeded(query.seed);
    let mut trees = [Tree::new(TreeRole::Start, query.start.clone()), Tree::new(TreeRole::Goal, query.goal.clone())];
    // Index into `trees` of the tree that extends toward the sample.
    let mut a = 0;
    let mut stats = PlanStats::default();
    let mut joined: Option<(usize, usize)> = None;

    if query.start == query.goal {
        joined = Some((0, 0));
    }
    while joined.is_none() && stats.iterations < query.max_iterations {
        stats.iterations += 1;
        // The first target is the goal itself, so unobstructed queries are
        // answered by a single direct steer.
        let alpha = if stats.iterations == 1 { query.goal.clone() } else { sample_state(scene, &mut rng) };
        let b = 1 - a;
        let n = nearest_in(&trees[a], &alpha, query.metric, bounds)?;
        let ext = steer_from_node(&trees[a], n, &alpha, scene, res)?;
        stats.collision_checks += ext.checks;
        if ext.progressed() {
            let s = insert_edge(&mut trees[a], n, &ext)?;
            let x_s = ext.reached.clone();
            let n_b = nearest_in(&trees[b], &x_s, query.metric, bounds)?;
            let con = steer_from_node(&trees[b], n_b, &x_s, scene, res)?;
            stats.collision_checks += con.checks;
            if con.progressed() {
                let s_b = insert_edge(&mut trees[b], n_b, &con)?;
                if con.reached_target {
                    joined = Some(if a == 0 { (s, s_b) } else { (s_b, s) });
                }
            } else if con.reached_target {
                // The nearest node already coincides with x_s.
                joined = Some(if a == 0 { (s, n_b) } else { (n_b, s) });
            }
        }
        if trees[b].len() > trees[a].len() {
            a = b;
        }
    }

    let [start_tree, goal_tree] = trees;
    stats.nodes = start_tree.len() + goal_tree.len();
    let result = match joined {
        Some((i, j)) => {
            let traj = start_tree.path_trajectory(i)?.concat(&goal_tree.path_trajectory(j)?)?;
            stats.wall_time = clock.elapsed().as_secs_f64();
            PlanResult { outcome: Outcome::Solution, trajectory: Some(traj), stats }
        }
        None => {
            stats.wall_time = clock.elapsed().as_secs_f64();
            PlanResult::failure(stats)
        }
    };
    Ok(BbRrtRun { result, start_tree, goal_tree })
}
