//! Piecewise-constant-acceleration trajectories in `n` dimensions.
//!
//! Each axis keeps its own segment list because switch times differ per
//! axis; evaluation integrates the segments in closed form.

use crate::error::{Error, Result};
use crate::state::PhaseState;
use crate::steering::{Control1, ControlSegment, PhaseState1, SteeringPlan};

/// Absolute tolerance for matching endpoints when joining trajectories.
pub const SPLICE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    start: PhaseState,
    axes: Vec<Control1>,
    duration: f64,
}

impl Trajectory {
    /// Builds a trajectory; every axis must span the same duration.
    pub fn new(start: PhaseState, axes: Vec<Control1>) -> Result<Self> {
        start.check_dim(axes.len())?;
        if axes.iter().flat_map(|c| &c.segments).any(|s| !(s.duration >= 0.0) || !s.accel.is_finite()) {
            return Err(Error::InvalidArgument("segments need finite accelerations and nonnegative durations".into()));
        }
        let duration = axes.iter().map(Control1::duration).fold(0.0, f64::max);
        let tol = SPLICE_TOL * duration.max(1.0);
        if let Some(i) = axes.iter().position(|c| (c.duration() - duration).abs() > tol) {
            return Err(Error::InvalidArgument(format!(
                "axis {i} spans {} but the trajectory spans {duration}",
                axes[i].duration()
            )));
        }
        Ok(Self { start, axes, duration })
    }

    /// Zero-duration trajectory resting at `start`.
    pub fn stationary(start: PhaseState) -> Self {
        let axes = vec![Control1::default(); start.dim()];
        Self { start, axes, duration: 0.0 }
    }

    pub fn from_plan(start: PhaseState, plan: SteeringPlan) -> Self {
        debug_assert_eq!(start.dim(), plan.per_axis.len());
        Self { start, axes: plan.per_axis, duration: plan.arrival_time }
    }

    pub fn start(&self) -> &PhaseState {
        &self.start
    }

    pub fn axes(&self) -> &[Control1] {
        &self.axes
    }

    pub fn duration(&self) -> f64 {
        self.duration
    }

    pub fn dim(&self) -> usize {
        self.start.dim()
    }

    pub fn end_state(&self) -> PhaseState {
        self.state_unchecked(self.duration)
    }

    /// Closed-form state at time `t ∈ [0, duration]`.
    pub fn evaluate(&self, t: f64) -> Result<PhaseState> {
        let slack = 1e-12 * self.duration.max(1.0);
        if !(t >= -slack && t <= self.duration + slack) {
            return Err(Error::OutOfRange { t, duration: self.duration });
        }
        Ok(self.state_unchecked(t.clamp(0.0, self.duration)))
    }

    fn state_unchecked(&self, t: f64) -> PhaseState {
        if t == 0.0 {
            return self.start.clone();
        }
        PhaseState::from_axes(self.axes.iter().enumerate().map(|(i, c)| c.state_at(self.start.axis(i), t)))
    }

    /// The piece between `t1` and `t2`, re-timed to start at zero.
    pub fn restrict(&self, t1: f64, t2: f64) -> Result<Trajectory> {
        if !(0.0 <= t1 && t1 <= t2) || t2 > self.duration + 1e-12 * self.duration.max(1.0) {
            return Err(Error::OutOfRange { t: if t1 < 0.0 || t1 > t2 { t1 } else { t2 }, duration: self.duration });
        }
        let t2 = t2.min(self.duration);
        let start = self.evaluate(t1)?;
        if t2 == t1 {
            return Ok(Trajectory::stationary(start));
        }
        let axes = self.axes.iter().map(|c| clip(c, t1, t2)).collect();
        Ok(Self { start, axes, duration: t2 - t1 })
    }

    /// Appends `next`, whose start must match this trajectory's end.
    pub fn concat(&self, next: &Trajectory) -> Result<Trajectory> {
        next.start.check_dim(self.dim())?;
        check_match("concatenation", &self.end_state(), &next.start)?;
        Ok(self.concat_unchecked(next))
    }

    /// Appends `next` without checking continuity; used when a small jump
    /// is expected (threshold-connected trees).
    pub fn concat_unchecked(&self, next: &Trajectory) -> Trajectory {
        let axes = self
            .axes
            .iter()
            .zip(&next.axes)
            .map(|(a, b)| Control1::new(a.segments.iter().chain(&b.segments).copied().collect()))
            .collect();
        Trajectory { start: self.start.clone(), axes, duration: self.duration + next.duration }
    }

    /// Replaces the piece on `[t1, t2]` with `mid`.
    pub fn splice(&self, t1: f64, t2: f64, mid: &Trajectory) -> Result<Trajectory> {
        mid.start.check_dim(self.dim())?;
        let head = self.restrict(0.0, t1)?;
        let tail = self.restrict(t2, self.duration)?;
        check_match("splice start", &head.end_state(), &mid.start)?;
        check_match("splice end", &mid.end_state(), &tail.start)?;
        Ok(head.concat_unchecked(mid).concat_unchecked(&tail))
    }

    /// Sorted, deduplicated segment boundary times across all axes.
    pub fn switch_times(&self) -> Vec<f64> {
        let mut times: Vec<f64> = self
            .axes
            .iter()
            .flat_map(|c| {
                c.segments.iter().scan(0.0, |t, s| {
                    *t += s.duration;
                    Some(*t)
                })
            })
            .filter(|&t| t > 0.0 && t < self.duration)
            .collect();
        times.sort_unstable_by(f64::total_cmp);
        times.dedup();
        times
    }

    /// Forward evaluator that amortizes segment lookup for nondecreasing times.
    pub fn cursor(&self) -> Cursor<'_> {
        Cursor {
            traj: self,
            axes: (0..self.dim()).map(|i| AxisCursor { index: 0, t0: 0.0, x0: self.start.axis(i) }).collect(),
        }
    }
}

fn check_match(what: &str, a: &PhaseState, b: &PhaseState) -> Result<()> {
    let diff = a.max_abs_diff(b);
    if diff > SPLICE_TOL {
        return Err(Error::ContractViolation(format!("{what}: endpoints differ by {diff:e}")));
    }
    Ok(())
}

fn clip(control: &Control1, t1: f64, t2: f64) -> Control1 {
    let mut out = Vec::new();
    let mut t0 = 0.0;
    let n = control.segments.len();
    for (i, s) in control.segments.iter().enumerate() {
        let mut end = t0 + s.duration;
        if i + 1 == n {
            end = end.max(t2);
        }
        let lo = t0.max(t1);
        let hi = end.min(t2);
        if hi > lo {
            out.push(ControlSegment::new(s.accel, hi - lo));
        }
        t0 = end;
        if t0 >= t2 {
            break;
        }
    }
    Control1::new(out)
}

#[derive(Debug, Clone)]
struct AxisCursor {
    index: usize,
    t0: f64,
    x0: PhaseState1,
}

/// Incremental closed-form evaluation along a trajectory.
#[derive(Debug, Clone)]
pub struct Cursor<'a> {
    traj: &'a Trajectory,
    axes: Vec<AxisCursor>,
}

impl Cursor<'_> {
    /// State at `t`; calls must use nondecreasing `t`.
    pub fn state_at(&mut self, t: f64) -> PhaseState {
        let n = self.axes.len();
        let mut x = PhaseState { q: vec![0.0; n], v: vec![0.0; n] };
        self.fill(t, &mut x.q, &mut x.v);
        x
    }

    /// [`Cursor::state_at`] written into caller buffers of the trajectory's
    /// dimension.
    pub fn fill(&mut self, t: f64, q: &mut [f64], v: &mut [f64]) {
        let t = t.clamp(0.0, self.traj.duration);
        for (i, (c, ax)) in self.traj.axes.iter().zip(&mut self.axes).enumerate() {
            let n = c.segments.len();
            let x = if n == 0 {
                ax.x0
            } else {
                while ax.index + 1 < n && t >= ax.t0 + c.segments[ax.index].duration {
                    let s = c.segments[ax.index];
                    ax.x0 = ax.x0.advance(s.accel, s.duration);
                    ax.t0 += s.duration;
                    ax.index += 1;
                }
                ax.x0.advance(c.segments[ax.index].accel, t - ax.t0)
            };
            q[i] = x.q;
            v[i] = x.v;
        }
    }
}
