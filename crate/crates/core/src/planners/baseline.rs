//! Constant-control bidirectional kinodynamic RRT, used as a baseline.

use super::tree::{Tree, TreeRole};
use super::{sample_state, Outcome, PlanQuery, PlanResult, PlanStats};
use crate::error::{Error, Result};
use crate::rng::seeded;
use crate::state::PhaseState;
use crate::steering::{AccelBounds, Control1, ControlSegment};
use crate::trajectory::Trajectory;
use crate::world::{sweep, Direction, Scene};
use rand::Rng;
use std::f64::consts::PI;
use std::time::Instant;

#[derive(Debug, Clone, PartialEq)]
pub struct BaselineParams {
    pub action_count: usize,
    /// Duration each action is applied for.
    pub delta_t: f64,
    /// Per-component position tolerance for joining the trees.
    pub connect_q: f64,
    /// Per-component velocity tolerance for joining the trees.
    pub connect_v: f64,
    /// Factor applied to velocity differences in the nearest-neighbour metric.
    pub velocity_weight: f64,
}

impl Default for BaselineParams {
    fn default() -> Self {
        Self { action_count: 24, delta_t: 5.0, connect_q: 5.0, connect_v: 2.0, velocity_weight: 17.32 }
    }
}

impl BaselineParams {
    fn validate(&self) -> Result<()> {
        if self.action_count == 0 {
            return Err(Error::InvalidArgument("baseline needs at least one action".into()));
        }
        for (name, x) in [
            ("delta_t", self.delta_t),
            ("connect_q", self.connect_q),
            ("connect_v", self.connect_v),
            ("velocity_weight", self.velocity_weight),
        ] {
            if !(x > 0.0 && x.is_finite()) {
                return Err(Error::InvalidArgument(format!("{name} must be positive")));
            }
        }
        Ok(())
    }
}

/// Accelerations on the boundary of the bound box. In the plane they are
/// evenly spaced by angle; otherwise directions are drawn from a fixed seed.
pub fn action_set(bounds: &[AccelBounds], count: usize) -> Vec<Vec<f64>> {
    let n = bounds.len();
    let mut rng = seeded(0x0ac7_1095);
    (0..count)
        .map(|k| {
            let dir: Vec<f64> = if n == 2 {
                let th = 2.0 * PI * k as f64 / count as f64;
                vec![th.cos(), th.sin()]
            } else {
                (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
            };
            let scale = dir
                .iter()
                .zip(bounds)
                .filter(|(d, _)| d.abs() > 1e-12)
                .map(|(&d, b)| if d > 0.0 { b.max / d } else { b.min / d })
                .fold(f64::INFINITY, f64::min);
            dir.iter().map(|d| if d.abs() > 1e-12 { d * scale } else { 0.0 }).collect()
        })
        .collect()
}

fn weighted_distance(a: &PhaseState, b: &PhaseState, w: f64) -> f64 {
    let dq: f64 = a.q.iter().zip(&b.q).map(|(x, y)| (x - y).powi(2)).sum();
    let dv: f64 = a.v.iter().zip(&b.v).map(|(x, y)| (w * (x - y)).powi(2)).sum();
    (dq + dv).sqrt()
}

fn constant_control(start: PhaseState, accel: &[f64], dt: f64) -> Result<Trajectory> {
    let axes = accel.iter().map(|&a| Control1::new(vec![ControlSegment::new(a, dt)])).collect();
    Trajectory::new(start, axes)
}

/// State from which applying `accel` for `dt` reaches `x`.
fn predecessor(x: &PhaseState, accel: &[f64], dt: f64) -> PhaseState {
    let q = x.q.iter().zip(&x.v).zip(accel).map(|((q, v), a)| q - v * dt + 0.5 * a * dt * dt).collect();
    let v = x.v.iter().zip(accel).map(|(v, a)| v - a * dt).collect();
    PhaseState { q, v }
}

struct Extender<'a> {
    scene: &'a Scene,
    params: &'a BaselineParams,
    actions: Vec<Vec<f64>>,
    resolution: f64,
}

impl Extender<'_> {
    /// One extension of `tree` toward `target`; returns the new node.
    fn extend(&self, tree: &mut Tree, target: &PhaseState, checks: &mut usize) -> Result<Option<usize>> {
        let w = self.params.velocity_weight;
        let n = tree
            .states()
            .enumerate()
            .map(|(i, s)| (i, weighted_distance(s, target, w)))
            .fold(None, |best: Option<(usize, f64)>, (i, d)| match best {
                Some((_, bd)) if bd <= d => best,
                _ => Some((i, d)),
            })
            .map(|(i, _)| i)
            .expect("trees are never empty");
        let x = tree.nodes[n].state.clone();
        let dt = self.params.delta_t;
        let mut best: Option<(f64, PhaseState, Trajectory)> = None;
        for a in &self.actions {
            let (state, edge) = match tree.role {
                TreeRole::Start => {
                    let e = constant_control(x.clone(), a, dt)?;
                    (e.end_state(), e)
                }
                TreeRole::Goal => {
                    let y = predecessor(&x, a, dt);
                    (y.clone(), constant_control(y, a, dt)?)
                }
            };
            let d = weighted_distance(&state, target, w);
            if best.as_ref().is_some_and(|(bd, _, _)| *bd <= d) {
                continue;
            }
            let sw = sweep(self.scene, &edge, self.resolution, Direction::Forward);
            *checks += sw.checks;
            if sw.hit_time.is_none() {
                best = Some((d, state, edge));
            }
        }
        Ok(best.map(|(_, state, edge)| tree.add(state, n, edge)))
    }

    fn within_tolerance(&self, a: &PhaseState, b: &PhaseState) -> bool {
        a.q.iter().zip(&b.q).all(|(x, y)| (x - y).abs() <= self.params.connect_q)
            && a.v.iter().zip(&b.v).all(|(x, y)| (x - y).abs() <= self.params.connect_v)
    }
}

/// Bidirectional RRT extending by the best of a fixed set of constant
/// accelerations; the trees join when two nodes fall within the connection
/// tolerance, so the returned trajectory may jump there (reported as
/// `connection_gap`).
pub fn baseline_rrt_bidirectional(query: &PlanQuery, params: &BaselineParams) -> Result<PlanResult> {
    query.validate()?;
    params.validate()?;
    let clock = Instant::now();
    let scene = query.scene;
    let ext = Extender {
        scene,
        params,
        actions: action_set(scene.accel(), params.action_count),
        resolution: query.resolution,
    };
    let mut rng = seeded(query.seed);
    let mut trees = [Tree::new(TreeRole::Start, query.start.clone()), Tree::new(TreeRole::Goal, query.goal.clone())];
    let mut a = 0;
    let mut stats = PlanStats::default();
    let mut joined = (query.start == query.goal).then_some((0, 0));
    while joined.is_none() && stats.iterations < query.max_iterations {
        stats.iterations += 1;
        let alpha = sample_state(scene, &mut rng);
        let b = 1 - a;
        if let Some(s) = ext.extend(&mut trees[a], &alpha, &mut stats.collision_checks)? {
            let x_s = trees[a].nodes[s].state.clone();
            if let Some(s_b) = ext.extend(&mut trees[b], &x_s, &mut stats.collision_checks)? {
                if ext.within_tolerance(&trees[b].nodes[s_b].state, &x_s) {
                    joined = Some(if a == 0 { (s, s_b) } else { (s_b, s) });
                }
            }
        }
        if trees[b].len() > trees[a].len() {
            a = b;
        }
    }
    let [start_tree, goal_tree] = trees;
    stats.nodes = start_tree.len() + goal_tree.len();
    let Some((i, j)) = joined else {
        stats.wall_time = clock.elapsed().as_secs_f64();
        return Ok(PlanResult::failure(stats));
    };
    let head = start_tree.path_trajectory(i)?;
    let tail = goal_tree.path_trajectory(j)?;
    stats.connection_gap = Some(head.end_state().max_abs_diff(tail.start()));
    stats.connection_time = Some(head.duration());
    let traj = head.concat_unchecked(&tail);
    stats.wall_time = clock.elapsed().as_secs_f64();
    Ok(PlanResult { outcome: Outcome::Solution, trajectory: Some(traj), stats })
}
