//! Time-optimal steering for double integrators.
//!
//! A single axis obeys `q̈ = a` with `a ∈ [a_min, a_max]`. Constant acceleration
//! traces a parabola in the `(q, q̇)` phase plane, and the minimum-time control
//! between two phase states is at most two extremal "bangs" that switch where
//! the parabola through the start meets the parabola through the goal.
//!
//! For several independent axes a common arrival time is needed. Slowing an
//! axis down is always possible except inside a possible *gap* of arrival
//! times `(t_limit, t_mirror)`; [`min_sync_time`] sweeps the sorted event
//! times to find the earliest time every axis can meet.

use crate::error::{invalid, Error, Result};
use crate::state::PhaseState;

/// Switching velocities smaller than this are treated as zero.
pub const SWITCH_EPS: f64 = 1e-12;
/// Arrival times this close to a gap boundary count as the boundary.
pub const BOUNDARY_TOL: f64 = 1e-9;

/// Acceleration interval of one axis; always straddles zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccelBounds {
    pub min: f64,
    pub max: f64,
}

impl AccelBounds {
    pub fn new(min: f64, max: f64) -> Result<Self> {
        if !(min.is_finite() && max.is_finite()) || !(min < 0.0 && 0.0 < max) {
            return invalid(format!("acceleration bounds must satisfy min < 0 < max, got [{min}, {max}]"));
        }
        Ok(Self { min, max })
    }

    pub fn symmetric(magnitude: f64) -> Self {
        Self { min: -magnitude, max: magnitude }
    }

    pub fn contains(&self, a: f64) -> bool {
        self.min <= a && a <= self.max
    }

    /// Largest magnitude usable in both directions.
    pub fn tighter_magnitude(&self) -> f64 {
        self.max.min(-self.min)
    }

    pub fn max_magnitude(&self) -> f64 {
        self.max.max(-self.min)
    }

    pub fn scaled(&self, k: f64) -> Self {
        Self { min: self.min * k, max: self.max * k }
    }

    fn clamp_close(&self, a: f64) -> Option<f64> {
        let tol = 1e-9 * self.max_magnitude();
        if a < self.min - tol || a > self.max + tol {
            None
        } else {
            Some(a.clamp(self.min, self.max))
        }
    }
}

/// One axis phase point `(q, q̇)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseState1 {
    pub q: f64,
    pub v: f64,
}

impl PhaseState1 {
    pub const fn new(q: f64, v: f64) -> Self {
        Self { q, v }
    }

    /// State after holding acceleration `a` for `dt`.
    pub fn advance(&self, a: f64, dt: f64) -> Self {
        Self { q: self.q + self.v * dt + 0.5 * a * dt * dt, v: self.v + a * dt }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControlSegment {
    pub accel: f64,
    pub duration: f64,
}

impl ControlSegment {
    pub const fn new(accel: f64, duration: f64) -> Self {
        Self { accel, duration }
    }
}

/// Piecewise-constant acceleration for a single axis.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Control1 {
    pub segments: Vec<ControlSegment>,
}

impl Control1 {
    pub fn new(segments: Vec<ControlSegment>) -> Self {
        Self { segments }
    }

    pub fn duration(&self) -> f64 {
        self.segments.iter().map(|s| s.duration).sum()
    }

    /// Closed-form end state when applied from `from`.
    pub fn end_state(&self, from: PhaseState1) -> PhaseState1 {
        self.segments.iter().fold(from, |x, s| x.advance(s.accel, s.duration))
    }

    /// Closed-form state at time `t` (clamped to the control's span).
    pub fn state_at(&self, from: PhaseState1, t: f64) -> PhaseState1 {
        let mut x = from;
        let mut remaining = t.max(0.0);
        let n = self.segments.len();
        for (i, s) in self.segments.iter().enumerate() {
            // The last segment absorbs rounding slack past its nominal end.
            if remaining <= s.duration || i + 1 == n {
                return x.advance(s.accel, remaining);
            }
            x = x.advance(s.accel, s.duration);
            remaining -= s.duration;
        }
        x
    }

    /// Copy with zero-duration segments removed.
    pub fn normalized(&self) -> Self {
        Self { segments: self.segments.iter().copied().filter(|s| s.duration > 0.0).collect() }
    }
}

/// `q − q̇²/(2a)`: where the constant-acceleration parabola through `x` crosses `q̇ = 0`.
pub fn parabola_intercept(x: PhaseState1, accel: f64) -> Result<f64> {
    if accel == 0.0 || !accel.is_finite() {
        return invalid("parabola intercept needs a nonzero finite acceleration");
    }
    Ok(x.q - x.v * x.v / (2.0 * accel))
}

/// A two-bang candidate: `first` until the switch velocity, then `second`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct BangBang {
    first: f64,
    second: f64,
    v_switch: f64,
    t1: f64,
    t2: f64,
}

impl BangBang {
    fn total(&self) -> f64 {
        self.t1 + self.t2
    }

    fn control(&self) -> Control1 {
        Control1::new(vec![ControlSegment::new(self.first, self.t1), ControlSegment::new(self.second, self.t2)])
    }
}

/// Candidates for one ordering of extremal accelerations, indexed by the
/// sign of the switching velocity: `[positive root, negative root]`.
fn intersections(from: PhaseState1, to: PhaseState1, first: f64, second: f64) -> [Option<BangBang>; 2] {
    // Displacement of the two arcs must add up to the goal offset:
    // (vs² − v0²)/(2a1) + (v1² − vs²)/(2a2) = Δq.
    let k = 1.0 / (2.0 * first) - 1.0 / (2.0 * second);
    let rhs = (to.q - from.q) + from.v * from.v / (2.0 * first) - to.v * to.v / (2.0 * second);
    let sq = rhs / k;
    let scale = 1.0 + from.v * from.v + to.v * to.v;
    if sq < -1e-12 * scale {
        return [None, None];
    }
    let mut s = sq.max(0.0).sqrt();
    if s < SWITCH_EPS {
        s = 0.0;
    }
    let build = |vs: f64| {
        let t1 = (vs - from.v) / first;
        let t2 = (to.v - vs) / second;
        let tol = 1e-10 * (1.0 + vs.abs() + from.v.abs() + to.v.abs()) / first.abs().min(second.abs());
        (t1 >= -tol && t2 >= -tol).then(|| BangBang { first, second, v_switch: vs, t1: t1.max(0.0), t2: t2.max(0.0) })
    };
    [build(s), build(-s)]
}

/// All valid switching solutions, in the order `[A+, A−, B+, B−]` where `A`
/// applies `a_max` first and `B` applies `a_min` first.
fn all_candidates(from: PhaseState1, to: PhaseState1, b: AccelBounds) -> [[Option<BangBang>; 2]; 2] {
    [intersections(from, to, b.max, b.min), intersections(from, to, b.min, b.max)]
}

fn fastest(cands: &[[Option<BangBang>; 2]; 2]) -> BangBang {
    cands
        .iter()
        .flatten()
        .flatten()
        .copied()
        .min_by(|a, b| a.total().total_cmp(&b.total()))
        .expect("a double integrator always has a two-bang solution")
}

/// Result of [`min_time_steer_1d`].
#[derive(Debug, Clone, PartialEq)]
pub struct MinTimeSteer {
    pub control: Control1,
    pub t_star: f64,
    pub switch: PhaseState1,
}

/// Time-optimal control between two phase states of one axis.
///
/// The control always has two segments, the first or second possibly of
/// zero duration, each at an extremal acceleration.
pub fn min_time_steer_1d(from: PhaseState1, to: PhaseState1, b: AccelBounds) -> MinTimeSteer {
    let best = fastest(&all_candidates(from, to, b));
    let switch = from.advance(best.first, best.t1);
    MinTimeSteer { control: best.control(), t_star: best.total(), switch: PhaseState1::new(switch.q, best.v_switch) }
}

/// Minimum arrival time only; the hot path of the ρ1 metric.
pub fn min_time_1d(from: PhaseState1, to: PhaseState1, b: AccelBounds) -> f64 {
    let mut best = f64::INFINITY;
    for (first, second) in [(b.max, b.min), (b.min, b.max)] {
        for c in intersections(from, to, first, second).into_iter().flatten() {
            best = best.min(c.total());
        }
    }
    debug_assert!(best.is_finite(), "a double integrator always has a two-bang solution");
    best
}

/// Gap of unreachable arrival times `(t_limit, t_mirror)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gap {
    pub t_limit: f64,
    pub t_mirror: f64,
}

impl Gap {
    pub fn contains(&self, t: f64) -> bool {
        self.t_limit < t && t < self.t_mirror
    }
}

/// Which arrival times are reachable for one axis: every `t ≥ t_star`
/// outside the optional gap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaitProfile {
    pub t_star: f64,
    pub gap: Option<Gap>,
}

impl WaitProfile {
    pub fn no_gap(t_star: f64) -> Self {
        Self { t_star, gap: None }
    }

    pub fn with_gap(t_star: f64, t_limit: f64, t_mirror: f64) -> Self {
        Self { t_star, gap: Some(Gap { t_limit, t_mirror }) }
    }

    /// Exact feasibility predicate (boundaries inclusive).
    pub fn is_feasible(&self, t: f64) -> bool {
        t >= self.t_star && !self.gap.is_some_and(|g| g.contains(t))
    }

    /// Feasibility with [`BOUNDARY_TOL`] slack at every boundary.
    pub fn is_feasible_tol(&self, t: f64) -> bool {
        let tol = BOUNDARY_TOL * self.t_star.max(1.0);
        t >= self.t_star - tol && !self.gap.is_some_and(|g| g.t_limit + tol < t && t < g.t_mirror - tol)
    }
}

/// Reachable arrival times for one axis.
///
/// A gap appears when the start and goal both lie in the same velocity
/// half-plane and the "slow" ordering of bangs has two valid switching
/// points: the one nearer `q̇ = 0` bounds the slowest trajectory that stays in
/// the half-plane (`t_limit`), the mirrored one the fastest trajectory that
/// crosses over and comes back (`t_mirror`).
pub fn wait_profile_1d(from: PhaseState1, to: PhaseState1, b: AccelBounds) -> WaitProfile {
    let cands = all_candidates(from, to, b);
    let t_star = fastest(&cands).total();
    // A (a_max first) with two valid roots lives in the lower half-plane: the
    // root nearer zero is −s. B (a_min first) lives in the upper half-plane.
    let gap = match (cands[1], cands[0]) {
        ([Some(plus), Some(minus)], _) if plus.v_switch > 0.0 => Some((plus.total(), minus.total())),
        (_, [Some(plus), Some(minus)]) if plus.v_switch > 0.0 => Some((minus.total(), plus.total())),
        _ => None,
    };
    match gap {
        Some((t_limit, t_mirror)) if t_mirror - t_limit > SWITCH_EPS * t_mirror.max(1.0) => {
            WaitProfile::with_gap(t_star, t_limit.max(t_star), t_mirror)
        }
        _ => WaitProfile::no_gap(t_star),
    }
}

/// Two-segment control `((a1, t1), (a2, t2))` with `t1 + t2 = t_w` that
/// reaches `to` from `from`, or `None` when `t_w` is not a reachable arrival
/// time.
///
/// Among the infinitely many solutions, equal and opposite bangs with the
/// smallest magnitude are preferred; otherwise one of the two accelerations
/// is pinned to a bound and the other solved for.
pub fn fixed_time_steer_1d(from: PhaseState1, to: PhaseState1, b: AccelBounds, t_w: f64) -> Result<Option<Control1>> {
    if !(t_w > 0.0) || !t_w.is_finite() {
        return invalid(format!("arrival time must be positive, got {t_w}"));
    }
    let profile = wait_profile_1d(from, to, b);
    if !profile.is_feasible_tol(t_w) {
        return Ok(None);
    }
    Ok(solve_fixed_time(from, to, b, t_w).or_else(|| boundary_fallback(from, to, b, t_w)))
}

fn solve_fixed_time(from: PhaseState1, to: PhaseState1, b: AccelBounds, t: f64) -> Option<Control1> {
    let dv = to.v - from.v;
    // Position offset beyond coasting at the initial velocity.
    let e = (to.q - from.q) - from.v * t;
    let scale = 1.0 + from.q.abs() + to.q.abs() + (from.v.abs() + to.v.abs()) * t;

    if dv.abs() <= 1e-15 * (1.0 + from.v.abs()) && e.abs() <= 1e-15 * scale {
        return Some(Control1::new(vec![ControlSegment::new(0.0, t)]));
    }

    let accept = |a1: f64, t1: f64, a2: f64| -> Option<Control1> {
        if !(a1.is_finite() && t1.is_finite() && a2.is_finite()) {
            return None;
        }
        let ttol = 1e-10 * t.max(1.0);
        if t1 < -ttol || t1 > t + ttol {
            return None;
        }
        let a1 = b.clamp_close(a1)?;
        let a2 = b.clamp_close(a2)?;
        let t1 = t1.clamp(0.0, t);
        let control = Control1::new(vec![ControlSegment::new(a1, t1), ControlSegment::new(a2, t - t1)]);
        let end = control.end_state(from);
        let ok = (end.q - to.q).abs() <= 1e-8 * scale && (end.v - to.v).abs() <= 1e-8 * (1.0 + b.max_magnitude() * t);
        ok.then_some(control)
    };

    // Equal and opposite bangs (a, −a): T²a² − (4E − 2TΔv)a − Δv² = 0.
    let m = b.tighter_magnitude();
    let qa = t * t;
    let qb = -(4.0 * e - 2.0 * t * dv);
    let qc = -dv * dv;
    let disc = (qb * qb - 4.0 * qa * qc).max(0.0).sqrt();
    // Numerically stable pair of roots.
    let q = -0.5 * (qb + qb.signum() * disc);
    let mut roots = [q / qa, if q != 0.0 { qc / q } else { 0.0 }];
    roots.sort_by(|x, y| x.abs().total_cmp(&y.abs()));
    for a1 in roots {
        if a1 == 0.0 || a1.abs() > m * (1.0 + 1e-9) {
            continue;
        }
        let w = dv / a1;
        if let Some(c) = accept(a1, 0.5 * (w + t), -a1) {
            return Some(c);
        }
    }

    // One acceleration pinned to a bound. With a1 fixed, t1 = (2E − ΔvT)/(a1 T − Δv);
    // with a2 fixed, t2 = (2E − ΔvT)/(Δv − a2 T).
    let num = 2.0 * e - dv * t;
    let mut pinned: Vec<Control1> = Vec::new();
    for a1 in [b.max, b.min] {
        let den = a1 * t - dv;
        if den.abs() > 1e-14 {
            let t1 = num / den;
            let t2 = t - t1;
            let a2 = if t2 > 1e-14 { (dv - a1 * t1) / t2 } else { 0.0 };
            pinned.extend(accept(a1, t1, a2));
        }
    }
    for a2 in [b.max, b.min] {
        let den = dv - a2 * t;
        if den.abs() > 1e-14 {
            let t2 = num / den;
            let t1 = t - t2;
            let a1 = if t1 > 1e-14 { (dv - a2 * t2) / t1 } else { 0.0 };
            pinned.extend(accept(a1, t1, a2));
        }
    }
    // Constant acceleration over the whole interval.
    pinned.extend(accept(dv / t, t, dv / t));
    pinned.into_iter().min_by(|x, y| peak(x).total_cmp(&peak(y)))
}

fn peak(c: &Control1) -> f64 {
    c.segments.iter().map(|s| s.accel.abs()).fold(0.0, f64::max)
}

/// Within tolerance of a boundary time the bang-bang candidate itself is the
/// answer; stretch its last segment by the residual.
fn boundary_fallback(from: PhaseState1, to: PhaseState1, b: AccelBounds, t: f64) -> Option<Control1> {
    all_candidates(from, to, b)
        .iter()
        .flatten()
        .flatten()
        .filter(|c| (c.total() - t).abs() <= 10.0 * BOUNDARY_TOL * t.max(1.0))
        .min_by(|x, y| (x.total() - t).abs().total_cmp(&(y.total() - t).abs()))
        .map(|c| {
            let mut control = c.control();
            let last = control.segments.last_mut().expect("two segments");
            last.duration = (t - c.t1).max(0.0);
            control
        })
}

/// Earliest time feasible for every profile, by sweeping sorted event times.
///
/// `t_star` and `t_mirror` make an axis feasible, `t_limit` makes it
/// infeasible again. Boundaries are inclusive, so at equal times the
/// enabling events are processed first.
pub fn min_sync_time(profiles: &[WaitProfile]) -> Result<f64> {
    if profiles.is_empty() {
        return invalid("synchronization needs at least one axis");
    }
    let mut events: Vec<(f64, i32)> = Vec::with_capacity(profiles.len() * 3);
    for p in profiles {
        events.push((p.t_star, 1));
        if let Some(g) = p.gap {
            events.push((g.t_limit, -1));
            events.push((g.t_mirror, 1));
        }
    }
    // Enabling (+1) sorts before disabling (−1) at equal times.
    events.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(b.1.cmp(&a.1)));
    let n = profiles.len() as i32;
    let mut count = 0;
    for (t, delta) in events {
        count += delta;
        if count == n && delta > 0 {
            return Ok(t);
        }
    }
    Err(Error::ContractViolation("sweep ended without a common arrival time".into()))
}

/// Synchronized controls for all axes.
#[derive(Debug, Clone, PartialEq)]
pub struct SteeringPlan {
    pub per_axis: Vec<Control1>,
    pub arrival_time: f64,
}

fn check_bounds_dim(from: &PhaseState, to: &PhaseState, bounds: &[AccelBounds]) -> Result<()> {
    from.check_dim(bounds.len())?;
    to.check_dim(bounds.len())
}

/// Time-optimal steering of `n` independent double integrators so that all
/// axes arrive at their goals simultaneously.
pub fn steer_nd(from: &PhaseState, to: &PhaseState, bounds: &[AccelBounds]) -> Result<SteeringPlan> {
    check_bounds_dim(from, to, bounds)?;
    if from == to {
        return Ok(SteeringPlan { per_axis: vec![Control1::default(); bounds.len()], arrival_time: 0.0 });
    }
    let profiles: Vec<WaitProfile> =
        bounds.iter().enumerate().map(|(i, &b)| wait_profile_1d(from.axis(i), to.axis(i), b)).collect();
    let arrival = min_sync_time(&profiles)?;
    if arrival <= 0.0 {
        return Ok(SteeringPlan { per_axis: vec![Control1::default(); bounds.len()], arrival_time: 0.0 });
    }
    let per_axis = bounds
        .iter()
        .enumerate()
        .map(|(i, &b)| {
            let (x0, x1) = (from.axis(i), to.axis(i));
            let mts = min_time_steer_1d(x0, x1, b);
            if mts.t_star == arrival {
                return Ok(mts.control);
            }
            fixed_time_steer_1d(x0, x1, b, arrival)?.ok_or_else(|| {
                Error::ContractViolation(format!("axis {i} cannot arrive at synchronized time {arrival}"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SteeringPlan { per_axis, arrival_time: arrival })
}

/// ρ1: slowest single-axis minimum time from `from` to `to`.
pub fn rho1(from: &PhaseState, to: &PhaseState, bounds: &[AccelBounds]) -> f64 {
    rho1_capped(from, to, bounds, f64::INFINITY)
}

/// [`rho1`], except that once an axis reaches `cap` the remaining axes are
/// skipped and that axis's time is returned.
pub fn rho1_capped(from: &PhaseState, to: &PhaseState, bounds: &[AccelBounds], cap: f64) -> f64 {
    let mut worst = 0.0f64;
    for (i, &b) in bounds.iter().enumerate() {
        let t = min_time_1d(PhaseState1::new(from.q[i], from.v[i]), PhaseState1::new(to.q[i], to.v[i]), b);
        worst = worst.max(t);
        if worst >= cap {
            break;
        }
    }
    worst
}

/// ρ2: synchronized arrival time, accounting for gaps.
pub fn rho2(from: &PhaseState, to: &PhaseState, bounds: &[AccelBounds]) -> f64 {
    if from == to {
        return 0.0;
    }
    let profiles: Vec<WaitProfile> =
        bounds.iter().enumerate().map(|(i, &b)| wait_profile_1d(from.axis(i), to.axis(i), b)).collect();
    min_sync_time(&profiles).expect("nonempty profiles always synchronize")
}

#[cfg(test)]
mod tests {
    use super::*;

    const UNIT: AccelBounds = AccelBounds { min: -1.0, max: 1.0 };

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn intercept_examples() {
        assert_eq!(parabola_intercept(PhaseState1::new(0.0, 0.0), 1.0).unwrap(), 0.0);
        assert_eq!(parabola_intercept(PhaseState1::new(1.0, 2.0), 1.0).unwrap(), -1.0);
        assert!(close(parabola_intercept(PhaseState1::new(0.25, 1.0), -1.0).unwrap(), 0.75, 1e-15));
        assert!(parabola_intercept(PhaseState1::new(0.0, 1.0), 0.0).is_err());
    }

    #[test]
    fn rest_to_rest_is_symmetric() {
        let r = min_time_steer_1d(PhaseState1::new(0.0, 0.0), PhaseState1::new(1.0, 0.0), UNIT);
        assert_eq!(r.control.segments, vec![ControlSegment::new(1.0, 1.0), ControlSegment::new(-1.0, 1.0)]);
        assert_eq!(r.t_star, 2.0);
        assert_eq!(r.switch, PhaseState1::new(0.5, 1.0));
    }

    #[test]
    fn velocity_reversal_is_single_bang() {
        let r = min_time_steer_1d(PhaseState1::new(0.0, 1.0), PhaseState1::new(0.0, -1.0), UNIT);
        assert_eq!(r.t_star, 2.0);
        assert_eq!(r.control.normalized().segments, vec![ControlSegment::new(-1.0, 2.0)]);
        assert_eq!(r.control.segments.len(), 2);
    }

    #[test]
    fn asymmetric_bounds_rest_to_rest() {
        let b = AccelBounds::new(-2.0, 1.0).unwrap();
        let r = min_time_steer_1d(PhaseState1::new(0.0, 0.0), PhaseState1::new(1.0, 0.0), b);
        assert!(close(r.t_star, 3f64.sqrt(), 1e-12));
        assert!(close(r.control.segments[0].duration, 2.0 * r.control.segments[1].duration, 1e-12));
    }

    #[test]
    fn bounds_must_straddle_zero() {
        assert!(AccelBounds::new(0.5, 1.0).is_err());
        assert!(AccelBounds::new(-1.0, 0.0).is_err());
        assert!(AccelBounds::new(-1.0, f64::INFINITY).is_err());
    }

    #[test]
    fn wait_profile_examples() {
        let p = wait_profile_1d(PhaseState1::new(0.0, 0.0), PhaseState1::new(1.0, 0.0), UNIT);
        assert_eq!(p, WaitProfile::no_gap(2.0));

        let p = wait_profile_1d(PhaseState1::new(0.0, 1.0), PhaseState1::new(0.25, 1.0), UNIT);
        let g = p.gap.expect("gap");
        let lim_v = 0.75f64.sqrt();
        assert!(close(p.t_star, 1.25f64.sqrt() * 2.0 - 2.0, 1e-12));
        assert!(close(g.t_limit, 2.0 * (1.0 - lim_v), 1e-12));
        assert!(close(g.t_mirror, g.t_limit + 4.0 * lim_v, 1e-12));

        // Switching exactly at q̇ = 0: the mirrored detour has zero width.
        let p = wait_profile_1d(PhaseState1::new(0.0, 1.0), PhaseState1::new(1.0, 1.0), UNIT);
        assert!(p.gap.is_none());
    }

    #[test]
    fn fixed_time_examples() {
        let c =
            fixed_time_steer_1d(PhaseState1::new(0.0, 0.0), PhaseState1::new(1.0, 0.0), UNIT, 2.0).unwrap().unwrap();
        assert_eq!(c.segments, vec![ControlSegment::new(1.0, 1.0), ControlSegment::new(-1.0, 1.0)]);

        let (a, g) = (PhaseState1::new(0.0, 1.0), PhaseState1::new(0.25, 1.0));
        assert_eq!(fixed_time_steer_1d(a, g, UNIT, 1.0).unwrap(), None);
        let c = fixed_time_steer_1d(a, g, UNIT, 4.0).unwrap().unwrap();
        assert!(close(c.duration(), 4.0, 1e-12));
        let end = c.end_state(a);
        assert!(close(end.q, 0.25, 1e-12) && close(end.v, 1.0, 1e-12));
        assert!(c.segments.iter().all(|s| UNIT.contains(s.accel)));

        assert!(fixed_time_steer_1d(a, g, UNIT, 0.0).is_err());
        assert!(fixed_time_steer_1d(a, g, UNIT, -1.0).is_err());
    }

    #[test]
    fn stationary_axis_pads_with_coast() {
        let x = PhaseState1::new(3.0, 0.0);
        let c = fixed_time_steer_1d(x, x, UNIT, 2.5).unwrap().unwrap();
        assert_eq!(c.segments, vec![ControlSegment::new(0.0, 2.5)]);
    }

    #[test]
    fn sync_examples() {
        assert_eq!(min_sync_time(&[WaitProfile::no_gap(2.0)]).unwrap(), 2.0);
        let two = [WaitProfile::with_gap(1.0, 2.0, 5.0), WaitProfile::no_gap(3.0)];
        assert_eq!(min_sync_time(&two).unwrap(), 5.0);
        let nested = [WaitProfile::with_gap(1.0, 2.0, 5.0), WaitProfile::with_gap(1.5, 1.8, 1.9)];
        assert_eq!(min_sync_time(&nested).unwrap(), 1.5);
        assert!(min_sync_time(&[]).is_err());
    }

    #[test]
    fn gap_boundary_is_inclusive() {
        let p = [WaitProfile::with_gap(1.0, 1.0, 4.0), WaitProfile::no_gap(1.0)];
        assert_eq!(min_sync_time(&p).unwrap(), 1.0);
        let p = [WaitProfile::with_gap(1.0, 2.0, 4.0), WaitProfile::no_gap(2.0)];
        assert_eq!(min_sync_time(&p).unwrap(), 2.0);
    }

    #[test]
    fn steer_nd_examples() {
        let bounds = [UNIT, UNIT];
        let from = PhaseState::at_rest(vec![0.0, 0.0]);
        let plan = steer_nd(&from, &PhaseState::at_rest(vec![1.0, 1.0]), &bounds).unwrap();
        assert_eq!(plan.arrival_time, 2.0);
        for c in &plan.per_axis {
            assert_eq!(c.segments, vec![ControlSegment::new(1.0, 1.0), ControlSegment::new(-1.0, 1.0)]);
        }

        let goal = PhaseState::at_rest(vec![1.0, 4.0]);
        let plan = steer_nd(&from, &goal, &bounds).unwrap();
        assert_eq!(plan.arrival_time, 4.0);
        for (i, c) in plan.per_axis.iter().enumerate() {
            assert!(close(c.duration(), 4.0, 1e-12));
            let end = c.end_state(from.axis(i));
            assert!(close(end.q, goal.q[i], 1e-12) && close(end.v, 0.0, 1e-12));
        }

        let plan = steer_nd(&goal, &goal, &bounds).unwrap();
        assert_eq!(plan.arrival_time, 0.0);
        assert!(plan.per_axis.iter().all(|c| c.segments.is_empty()));
        assert!(steer_nd(&from, &PhaseState::at_rest(vec![1.0]), &bounds).is_err());
    }

    #[test]
    fn metric_examples() {
        let bounds = [UNIT, UNIT];
        let a = PhaseState::at_rest(vec![0.0, 0.0]);
        let b = PhaseState::at_rest(vec![1.0, 4.0]);
        assert_eq!(rho1(&a, &a, &bounds), 0.0);
        assert_eq!(rho2(&a, &a, &bounds), 0.0);
        assert_eq!(rho1(&a, &b, &bounds), 4.0);
        let x = PhaseState::new(vec![0.0], vec![1.0]).unwrap();
        let y = PhaseState::new(vec![0.25], vec![1.0]).unwrap();
        assert!(close(rho1(&x, &y, &[UNIT]), 0.2360679775, 1e-9));
        assert!(rho2(&a, &b, &bounds) >= rho1(&a, &b, &bounds));
    }
}
