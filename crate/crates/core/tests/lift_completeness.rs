//! Any free geometric path becomes a free rest-to-rest trajectory: a
//! polyline from RRT-Connect lifted by the bang-bang transform and then
//! shortcut stays free, and so the pipeline solves whatever the geometric
//! planner solves.

mod common;

use bangbang::optimize::{bang_bang_transform, lift_and_optimize, ShortcutConfig};
use bangbang::planners::{rrt_connect_geometric, GeometricParams};
use bangbang::world::{segment_free, trajectory_free};
use bangbang::{PhaseState, Scene};
use common::scenes::{manipulator, maze_a};
use proptest::prelude::*;

fn check_pipeline(scene: &Scene, q0: &[f64], q1: &[f64], seed: u64, res: f64) -> (f64, f64) {
    let geo = GeometricParams::for_scene(scene).with_seed(seed);
    let shortcut = ShortcutConfig::for_scene(scene).with_seed(seed);
    let r = lift_and_optimize(scene, q0, q1, &geo, &shortcut).unwrap();
    assert!(r.solved(), "seed {seed}");
    let traj = r.trajectory.unwrap();
    assert_eq!(traj.start(), &PhaseState::at_rest(q0.to_vec()));
    assert!(traj.end_state().approx_eq(&PhaseState::at_rest(q1.to_vec()), 1e-6));
    let report = trajectory_free(scene, &traj, res).unwrap();
    assert!(report.free, "seed {seed} collides at {:?}", report.first_hit_time);
    (r.stats.initial_traj_time.unwrap(), traj.duration())
}

#[test]
fn maze_pipeline() {
    let (scene, start, goal) = maze_a();
    for seed in 0..5 {
        let (before, after) = check_pipeline(&scene, &start.q, &goal.q, seed, 0.4);
        assert!(after <= before);
    }
}

#[test]
fn ten_link_manipulator_pipeline() {
    let (scene, start, goal) = manipulator(10);
    for seed in 0..3 {
        let (before, after) = check_pipeline(&scene, &start, &goal, seed, 0.005);
        assert!(after < before);
    }
}

#[test]
fn lifted_path_is_free_before_shortcutting() {
    let (scene, start, goal) = manipulator(10);
    let plan = rrt_connect_geometric(&scene, &start, &goal, &GeometricParams::for_scene(&scene).with_seed(4)).unwrap();
    let path = plan.path.unwrap();
    let lifted = bang_bang_transform(&path, scene.accel()).unwrap();
    assert!(trajectory_free(&scene, &lifted, 0.005).unwrap().free);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn free_polylines_lift_to_free_trajectories(seed in 0u64..100_000) {
        let (scene, start, goal) = maze_a();
        let plan = rrt_connect_geometric(&scene, &start.q, &goal.q, &GeometricParams::for_scene(&scene).with_seed(seed)).unwrap();
        let path = plan.path.unwrap();
        prop_assert!(path.windows(2).all(|w| segment_free(&scene, &w[0], &w[1], 0.5).0));
        let lifted = bang_bang_transform(&path, scene.accel()).unwrap();
        let report = trajectory_free(&scene, &lifted, 0.5).unwrap();
        prop_assert!(report.free, "collides at {:?}", report.first_hit_time);
    }
}
