use super::geometry::{segments_intersect, Point};
use super::{fk_chain, RobotModel, Scene};
use crate::error::{invalid, Result};
use crate::trajectory::Trajectory;

/// Outcome of checking a trajectory against a scene.
#[derive(Debug, Clone, PartialEq)]
pub struct CollisionReport {
    pub free: bool,
    pub first_hit_time: Option<f64>,
    /// Time of the last sample that passed before the first hit.
    pub last_free_time: Option<f64>,
    pub checks_performed: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// From `t = 0` toward the end.
    Forward,
    /// From the end back toward `t = 0`.
    Backward,
}

/// Sample-by-sample walk along a trajectory, stopping at the first violation.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Sweep {
    /// Sample times that passed, in walk order.
    pub free_times: Vec<f64>,
    pub hit_time: Option<f64>,
    pub checks: usize,
}

/// Whether the robot at configuration `q` is inside the position bounds and
/// clear of every obstacle.
pub fn config_free(scene: &Scene, q: &[f64]) -> bool {
    if q.len() != scene.dim() || q.iter().zip(scene.q_bounds()).any(|(&x, &(lo, hi))| x < lo || x > hi) {
        return false;
    }
    match scene.robot() {
        RobotModel::Point { radius } => {
            let p = [q[0], q[1]];
            !scene.obstacles().iter().any(|o| o.overlaps_disc(p, *radius))
        }
        RobotModel::Chain(chain) => {
            let Ok(segs) = fk_chain(chain, q) else { return false };
            if segs.iter().any(|&(a, b)| scene.obstacles().iter().any(|o| o.intersects_segment(a, b))) {
                return false;
            }
            !(chain.self_collision && self_intersecting(&segs))
        }
    }
}

fn self_intersecting(segs: &[(Point, Point)]) -> bool {
    (0..segs.len()).any(|i| (i + 2..segs.len()).any(|j| segments_intersect(segs[i].0, segs[i].1, segs[j].0, segs[j].1)))
}

/// Workspace distance the robot at `q` can move before touching an obstacle
/// (or, for point robots, the position bounds). Zero or negative means
/// contact; configurations outside the bounds are negative.
pub fn clearance(scene: &Scene, q: &[f64]) -> f64 {
    if q.len() != scene.dim() {
        return f64::NEG_INFINITY;
    }
    let to_bounds =
        q.iter().zip(scene.q_bounds()).map(|(&x, &(lo, hi))| (x - lo).min(hi - x)).fold(f64::INFINITY, f64::min);
    match scene.robot() {
        RobotModel::Point { radius } => {
            let mut c = to_bounds - radius;
            let p = [q[0], q[1]];
            for o in scene.obstacles() {
                c = c.min(o.signed_distance(p, c + radius) - radius);
            }
            c
        }
        RobotModel::Chain(chain) => {
            if to_bounds < 0.0 {
                return to_bounds;
            }
            let Ok(segs) = fk_chain(chain, q) else { return f64::NEG_INFINITY };
            if chain.self_collision && self_intersecting(&segs) {
                return 0.0;
            }
            let mut c = f64::INFINITY;
            for &(a, b) in &segs {
                for o in scene.obstacles() {
                    c = o.segment_distance(a, b, c);
                }
            }
            c
        }
    }
}

fn velocity_ok(scene: &Scene, v: &[f64]) -> bool {
    v.iter().zip(scene.v_bounds()).all(|(&x, &(lo, hi))| {
        let tol = 1e-9 * (1.0 + lo.abs().max(hi.abs()));
        x >= lo - tol && x <= hi + tol
    })
}

/// Clearance at or below which the robot counts as touching.
fn contact_tolerance(scene: &Scene) -> f64 {
    let extent = match scene.robot() {
        RobotModel::Point { .. } => scene.q_bounds().iter().map(|(lo, hi)| hi - lo).fold(0.0, f64::max),
        RobotModel::Chain(c) => c.links as f64 * c.link_length,
    };
    1e-9 * (1.0 + extent)
}

/// Per-axis bound on how far any robot point moves per unit change of that
/// coordinate: 1 for a point robot, the length of the chain beyond the joint
/// for chains.
fn lever_arms(scene: &Scene) -> Vec<f64> {
    match scene.robot() {
        RobotModel::Point { .. } => vec![1.0; scene.dim()],
        RobotModel::Chain(c) => (0..c.links).map(|j| (c.links - j) as f64 * c.link_length).collect(),
    }
}

/// Longest time over which motion from speed `v` under acceleration at most
/// `a` covers no more than distance `d`.
fn time_within(v: f64, a: f64, d: f64) -> f64 {
    2.0 * d / (v + (v * v + 2.0 * a * d).sqrt())
}

/// Longest step from velocity `v` that keeps every robot point within
/// `room` and every coordinate within `resolution` (chains) or the robot
/// within `resolution` (point robots).
fn step_time(scene: &Scene, arms: &[f64], v: &[f64], room: f64, resolution: f64) -> f64 {
    let accel = scene.accel();
    match scene.robot() {
        RobotModel::Point { .. } => {
            let speed = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            let a = accel.iter().map(|b| b.max_magnitude().powi(2)).sum::<f64>().sqrt();
            time_within(speed, a, room.min(resolution))
        }
        RobotModel::Chain(_) => {
            let speed: f64 = v.iter().zip(arms).map(|(x, w)| x.abs() * w).sum();
            let a: f64 = accel.iter().zip(arms).map(|(b, w)| b.max_magnitude() * w).sum();
            let per_joint = v
                .iter()
                .zip(accel)
                .map(|(x, b)| time_within(x.abs(), b.max_magnitude(), resolution))
                .fold(f64::INFINITY, f64::min);
            time_within(speed, a, room).min(per_joint)
        }
    }
}

/// Walks `traj` in `direction`, checking the configuration and the velocity
/// bounds at each sample; stops at the first violation. Every segment
/// switch is sampled.
///
/// Steps are conservative: no robot point moves further than the current
/// clearance before the next sample, so a passing walk certifies the whole
/// arc and the verdict does not depend on `resolution`, which only caps
/// the step (in workspace units for point robots, per joint for chains).
pub fn sweep(scene: &Scene, traj: &Trajectory, resolution: f64, direction: Direction) -> Sweep {
    let total = traj.duration();
    let min_step = 1e-12 * total.max(1.0);
    let contact = contact_tolerance(scene);
    let arms = lever_arms(scene);
    let switches = traj.switch_times();
    let mut out = Sweep::default();
    let mut cursor = traj.cursor();
    let mut x = traj.start().clone();
    // Position in the walk, measured from the walk's own origin.
    let mut s = 0.0;
    let mut next_switch = 0;
    loop {
        let t = match direction {
            Direction::Forward => s,
            Direction::Backward => total - s,
        };
        match direction {
            Direction::Forward => cursor.fill(t, &mut x.q, &mut x.v),
            Direction::Backward => {
                for (i, c) in traj.axes().iter().enumerate() {
                    let y = c.state_at(traj.start().axis(i), t);
                    x.q[i] = y.q;
                    x.v[i] = y.v;
                }
            }
        }
        out.checks += 1;
        let room = clearance(scene, &x.q);
        if !(room > contact && velocity_ok(scene, &x.v)) {
            out.hit_time = Some(t);
            return out;
        }
        out.free_times.push(t);
        let remaining = total - s;
        if remaining <= 0.0 {
            return out;
        }
        let mut step = step_time(scene, &arms, &x.v, room, resolution).max(min_step);
        // Land exactly on the next segment switch in walk order.
        let switch_s = match direction {
            Direction::Forward => {
                while next_switch < switches.len() && switches[next_switch] <= t {
                    next_switch += 1;
                }
                switches.get(next_switch).map(|&w| w - s)
            }
            Direction::Backward => {
                let idx = switches.partition_point(|&w| w < t);
                idx.checked_sub(1).map(|k| total - switches[k] - s)
            }
        };
        if let Some(d) = switch_s.filter(|&d| d > 0.0) {
            step = step.min(d.max(min_step));
        }
        s = (s + step).min(total);
    }
}

/// Collision and state-bound check of a whole trajectory.
pub fn trajectory_free(scene: &Scene, traj: &Trajectory, resolution: f64) -> Result<CollisionReport> {
    if !(resolution > 0.0) {
        return invalid("collision resolution must be positive");
    }
    let sw = sweep(scene, traj, resolution, Direction::Forward);
    Ok(CollisionReport {
        free: sw.hit_time.is_none(),
        first_hit_time: sw.hit_time,
        last_free_time: sw.free_times.last().copied(),
        checks_performed: sw.checks,
    })
}

/// Checks the straight configuration-space segment `a → b` by the same
/// conservative stepping as [`sweep`]; returns the verdict and the number of
/// configurations checked.
pub fn segment_free(scene: &Scene, a: &[f64], b: &[f64], resolution: f64) -> (bool, usize) {
    let contact = contact_tolerance(scene);
    let d: Vec<f64> = a.iter().zip(b).map(|(x, y)| y - x).collect();
    // Workspace motion per unit of the segment parameter, and the cap.
    let (rate, cap) = match scene.robot() {
        RobotModel::Point { .. } => {
            let len = d.iter().map(|x| x * x).sum::<f64>().sqrt();
            (len, resolution / len)
        }
        RobotModel::Chain(_) => {
            let rate = d.iter().zip(lever_arms(scene)).map(|(x, w)| x.abs() * w).sum();
            (rate, resolution / d.iter().fold(0.0, |m: f64, x| m.max(x.abs())))
        }
    };
    let mut q = a.to_vec();
    let mut u = 0.0;
    let mut checks = 0;
    loop {
        for (i, qi) in q.iter_mut().enumerate() {
            *qi = a[i] + u * d[i];
        }
        checks += 1;
        let room = clearance(scene, &q);
        if !(room > contact) {
            return (false, checks);
        }
        if u >= 1.0 || rate == 0.0 {
            return (true, checks);
        }
        u = (u + (room / rate).min(cap).max(1e-12)).min(1.0);
    }
}
