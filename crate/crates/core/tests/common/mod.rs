//! Brute-force oracles shared by the integration and acceptance tests. None
//! of them call the closed-form solvers they are used to check.
#![allow(dead_code)]

pub mod scenes;

/// Exact end state of `(accel, duration)` pieces applied from `(q, v)`.
pub fn integrate(q: f64, v: f64, pieces: &[(f64, f64)]) -> (f64, f64) {
    pieces.iter().fold((q, v), |(q, v), &(a, t)| (q + v * t + 0.5 * a * t * t, v + a * t))
}

fn refine(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    let flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (f(mid) > 0.0) == (flo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Shortest two-bang time from `(q0, v0)` to `(q1, v1)`, found by scanning
/// the first switch time on a grid for sign changes of the position miss
/// and refining each by bisection.
pub fn two_bang_min_time(q0: f64, v0: f64, q1: f64, v1: f64, a_min: f64, a_max: f64) -> f64 {
    let mag = a_min.abs().min(a_max);
    let horizon = 4.0 * (v0.abs() + v1.abs()) / mag + 4.0 * ((q1 - q0).abs() / mag).sqrt() + 1.0;
    let steps = 20_000;
    let scale = 1.0 + q0.abs() + q1.abs() + v0 * v0 + v1 * v1;
    let mut best = f64::INFINITY;
    for (a1, a2) in [(a_max, a_min), (a_min, a_max)] {
        let t2_of = |t1: f64| ((v1 - v0 - a1 * t1) / a2).max(0.0);
        let miss = |t1: f64| integrate(q0, v0, &[(a1, t1), (a2, t2_of(t1))]).0 - q1;
        let lo = ((v1 - v0) / a1).max(0.0);
        let h = horizon / steps as f64;
        let mut prev = miss(lo);
        if prev.abs() < 1e-9 * scale {
            best = best.min(lo + t2_of(lo));
        }
        for k in 1..=steps {
            let t = lo + h * k as f64;
            let cur = miss(t);
            if (cur > 0.0) != (prev > 0.0) || cur.abs() < 1e-9 * scale {
                let t1 = if cur.abs() < 1e-9 * scale { t } else { refine(t - h, t, miss) };
                best = best.min(t1 + t2_of(t1));
                break;
            }
            prev = cur;
        }
    }
    best
}

/// Whether some two-segment control with accelerations in `[a_min, a_max]`
/// reaches `(q1, v1)` at exactly `t_w`: grid over the first acceleration,
/// the second solved from the velocity condition, and a bisected root of
/// the position condition with residual below `1e-6`.
pub fn fixed_time_feasible(q0: f64, v0: f64, q1: f64, v1: f64, a_min: f64, a_max: f64, t_w: f64) -> bool {
    let (na, nt) = (400, 400);
    let tol = 1e-9 * (1.0 + a_min.abs().max(a_max));
    for i in 0..=na {
        let a1 = a_min + (a_max - a_min) * i as f64 / na as f64;
        let a2_of = |t1: f64| (v1 - v0 - a1 * t1) / (t_w - t1);
        let miss = |t1: f64| integrate(q0, v0, &[(a1, t1), (a2_of(t1), t_w - t1)]).0 - q1;
        let ok = |t1: f64| {
            let a2 = a2_of(t1);
            a2 >= a_min - tol && a2 <= a_max + tol && miss(t1).abs() < 1e-6
        };
        // t1 stays below t_w so the second acceleration is defined.
        let h = t_w / (nt as f64 + 1.0);
        let mut prev = miss(0.0);
        if ok(0.0) {
            return true;
        }
        for k in 1..=nt {
            let t = h * k as f64;
            let cur = miss(t);
            if (cur > 0.0) != (prev > 0.0) && ok(refine(t - h, t, miss)) {
                return true;
            }
            if ok(t) {
                return true;
            }
            prev = cur;
        }
    }
    false
}

/// Per-axis arrival constraints: earliest time and an optional open gap.
#[derive(Debug, Clone, Copy)]
pub struct Window {
    pub t_star: f64,
    pub gap: Option<(f64, f64)>,
}

impl Window {
    pub fn admits(&self, t: f64) -> bool {
        t >= self.t_star && !self.gap.is_some_and(|(lo, hi)| t > lo && t < hi)
    }
}

/// Smallest event time admitted by every window, by trying each candidate.
pub fn naive_sync(windows: &[Window]) -> f64 {
    let mut candidates: Vec<f64> = windows.iter().map(|w| w.t_star).collect();
    candidates.extend(windows.iter().filter_map(|w| w.gap.map(|g| g.1)));
    candidates.into_iter().filter(|&t| windows.iter().all(|w| w.admits(t))).fold(f64::INFINITY, f64::min)
}

/// Classical fourth-order Runge–Kutta on `q̈ = a(t)`, one pass per piece of
/// constant acceleration so every step sees a single value.
pub fn rk4(q: f64, v: f64, pieces: &[(f64, f64)], steps_per_piece: usize) -> (f64, f64) {
    let (mut q, mut v) = (q, v);
    for &(a, dur) in pieces {
        let h = dur / steps_per_piece as f64;
        for _ in 0..steps_per_piece {
            let f = |_q: f64, v: f64| (v, a);
            let k1 = f(q, v);
            let k2 = f(q + 0.5 * h * k1.0, v + 0.5 * h * k1.1);
            let k3 = f(q + 0.5 * h * k2.0, v + 0.5 * h * k2.1);
            let k4 = f(q + h * k3.0, v + h * k3.1);
            q += h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0);
            v += h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1);
        }
    }
    (q, v)
}
