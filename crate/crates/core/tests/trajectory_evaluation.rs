//! Closed-form trajectory evaluation against numerical integration, and the
//! restrict / concat / splice algebra.

mod common;

use bangbang::steering::steer_nd;
use bangbang::{AccelBounds, Control1, ControlSegment, PhaseState, Trajectory};
use common::rk4;
use proptest::prelude::*;

fn random_trajectory() -> impl Strategy<Value = Trajectory> {
    (1usize..5).prop_flat_map(|n| {
        let axis = prop::collection::vec((-2.0..2.0f64, 0.0..3.0f64), 0..6);
        (
            prop::collection::vec(-10.0..10.0f64, n),
            prop::collection::vec(-5.0..5.0f64, n),
            prop::collection::vec(axis, n),
        )
            .prop_map(|(q, v, axes)| {
                // Pad every axis to the longest duration with a coast.
                let total = axes.iter().map(|a| a.iter().map(|s| s.1).sum::<f64>()).fold(0.0, f64::max);
                let controls = axes
                    .into_iter()
                    .map(|a| {
                        let d: f64 = a.iter().map(|s| s.1).sum();
                        let mut segs: Vec<_> = a.into_iter().map(|(x, t)| ControlSegment::new(x, t)).collect();
                        segs.push(ControlSegment::new(0.0, total - d));
                        Control1::new(segs)
                    })
                    .collect();
                Trajectory::new(PhaseState::new(q, v).unwrap(), controls).unwrap()
            })
    })
}

fn pieces_until(c: &Control1, t: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut left = t;
    for s in &c.segments {
        let d = s.duration.min(left);
        out.push((s.accel, d));
        left -= d;
        if left <= 0.0 {
            break;
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn evaluation_matches_runge_kutta(traj in random_trajectory(), u in 0.0..=1.0f64) {
        let t = u * traj.duration();
        let x = traj.evaluate(t).unwrap();
        for (i, c) in traj.axes().iter().enumerate() {
            let (q, v) = rk4(traj.start().q[i], traj.start().v[i], &pieces_until(c, t), 8);
            prop_assert!((x.q[i] - q).abs() < 1e-9 * (1.0 + q.abs()), "q[{}] {} vs {}", i, x.q[i], q);
            prop_assert!((x.v[i] - v).abs() < 1e-9 * (1.0 + v.abs()));
        }
    }

    #[test]
    fn cursor_agrees_with_evaluate(traj in random_trajectory()) {
        let mut cur = traj.cursor();
        for k in 0..=50 {
            let t = traj.duration() * k as f64 / 50.0;
            let a = cur.state_at(t);
            let b = traj.evaluate(t).unwrap();
            prop_assert!(a.approx_eq(&b, 1e-9 * (1.0 + a.q.iter().fold(0.0f64, |m, x| m.max(x.abs())))));
        }
    }

    #[test]
    fn restrict_then_concat_is_identity(traj in random_trajectory(), u in 0.0..=1.0f64) {
        let t = u * traj.duration();
        let head = traj.restrict(0.0, t).unwrap();
        let tail = traj.restrict(t, traj.duration()).unwrap();
        prop_assert!(head.end_state().approx_eq(tail.start(), 1e-12 * (1.0 + traj.duration()).powi(2) * 10.0));
        let joined = head.concat(&tail).unwrap();
        prop_assert!((joined.duration() - traj.duration()).abs() < 1e-9);
        for k in 0..=20 {
            let s = traj.duration() * k as f64 / 20.0;
            let (a, b) = (joined.evaluate(s.min(joined.duration())).unwrap(), traj.evaluate(s).unwrap());
            prop_assert!(a.approx_eq(&b, 1e-8 * (1.0 + traj.duration()).powi(2)));
        }
    }

    #[test]
    fn splice_of_own_piece_round_trips(traj in random_trajectory(), u in 0.0..1.0f64, w in 0.0..1.0f64) {
        let t1 = u * traj.duration();
        let t2 = t1 + w * (traj.duration() - t1);
        let mid = traj.restrict(t1, t2).unwrap();
        let back = traj.splice(t1, t2, &mid).unwrap();
        prop_assert!((back.duration() - traj.duration()).abs() < 1e-9 * (1.0 + traj.duration()));
        prop_assert!(back.end_state().approx_eq(&traj.end_state(), 1e-8 * (1.0 + traj.duration()).powi(2)));
    }
}

#[test]
fn splice_replaces_middle() {
    let b = [AccelBounds::symmetric(1.0)];
    let a = PhaseState::at_rest(vec![0.0]);
    let goal = PhaseState::at_rest(vec![4.0]);
    let slow = Trajectory::new(
        a.clone(),
        vec![Control1::new(vec![
            ControlSegment::new(0.5, 2.0),
            ControlSegment::new(0.0, 2.0),
            ControlSegment::new(-0.5, 2.0),
        ])],
    )
    .unwrap();
    assert!(slow.end_state().approx_eq(&goal, 1e-12));
    let fast = Trajectory::from_plan(a.clone(), steer_nd(&a, &goal, &b).unwrap());
    let spliced = slow.splice(0.0, slow.duration(), &fast).unwrap();
    assert_eq!(spliced.duration(), 4.0);
    // A middle piece that does not meet the neighbours is refused.
    let off = Trajectory::stationary(PhaseState::at_rest(vec![1.0]));
    assert!(slow.splice(1.0, 2.0, &off).is_err());
}
