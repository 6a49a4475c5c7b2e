//! Test scenes built in code, mirroring the files under `scenes/`.

use bangbang::world::{PlanarChain, Polygon};
use bangbang::AccelBounds;
use bangbang::{PhaseState, RobotModel, Scene};
use std::f64::consts::PI;

/// Two staggered walls in an 800 × 800 square; query from the lower-left
/// corner to the upper-right one, both at rest.
pub fn maze_a() -> (Scene, PhaseState, PhaseState) {
    let walls =
        vec![Polygon::rect(0.0, 260.0, 400.0, 290.0).unwrap(), Polygon::rect(400.0, 510.0, 800.0, 540.0).unwrap()];
    let scene = Scene::planar([0.0, 0.0], [800.0, 800.0], 10.0, 0.2, walls, 0.0).unwrap();
    (scene, PhaseState::at_rest(vec![60.0, 60.0]), PhaseState::at_rest(vec![740.0, 740.0]))
}

/// Empty version of the maze square with the given speed limit.
pub fn open_square(max_speed: f64) -> Scene {
    Scene::planar([0.0, 0.0], [800.0, 800.0], max_speed, 0.2, Vec::new(), 0.0).unwrap()
}

/// `n`-link unit chain folded into a counter-clockwise polygon, to be
/// unfolded into the clockwise one past a small square obstacle.
pub fn manipulator(n: usize) -> (Scene, Vec<f64>, Vec<f64>) {
    let chain = PlanarChain::new(n, 1.0, [0.0, 0.0]);
    let (start, goal) = (chain.regular_polygon(true), chain.regular_polygon(false));
    let c = n as f64 / 2.0;
    let scene = Scene::new(
        vec![(-PI, PI); n],
        vec![(-10.0, 10.0); n],
        vec![AccelBounds::symmetric(1.0); n],
        vec![Polygon::rect(c - 0.25, -0.25, c + 0.25, 0.25).unwrap()],
        RobotModel::Chain(chain),
    )
    .unwrap();
    (scene, start, goal)
}
