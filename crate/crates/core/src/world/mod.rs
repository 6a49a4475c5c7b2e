//! Scenes, robot models and collision checking.

mod collision;
pub mod geometry;

pub use collision::{clearance, config_free, segment_free, sweep, trajectory_free, CollisionReport, Direction, Sweep};
pub use geometry::{Point, Polygon};

use crate::error::{Error, Result};
use crate::steering::AccelBounds;
use std::f64::consts::PI;

/// Fixed-base planar chain of equal-length links; joint `i` is measured
/// relative to link `i − 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanarChain {
    pub links: usize,
    pub link_length: f64,
    pub base: Point,
    pub joint_limit: f64,
    pub self_collision: bool,
}

impl PlanarChain {
    pub fn new(links: usize, link_length: f64, base: Point) -> Self {
        Self { links, link_length, base, joint_limit: PI, self_collision: false }
    }

    /// Configuration whose links close into a regular polygon, turning
    /// left (`ccw`) or right.
    pub fn regular_polygon(&self, ccw: bool) -> Vec<f64> {
        let turn = if ccw { 2.0 * PI } else { -2.0 * PI } / self.links as f64;
        (0..self.links).map(|i| if i == 0 { 0.0 } else { turn }).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RobotModel {
    /// Disc (radius zero: point) whose centre is the configuration.
    Point {
        radius: f64,
    },
    Chain(PlanarChain),
}

/// Link segments of a planar chain by cumulative-angle forward kinematics.
pub fn fk_chain(chain: &PlanarChain, q: &[f64]) -> Result<Vec<(Point, Point)>> {
    if q.len() != chain.links {
        return Err(Error::DimensionMismatch { expected: chain.links, got: q.len() });
    }
    let mut p = chain.base;
    let mut theta = 0.0;
    Ok(q.iter()
        .map(|&qi| {
            theta += qi;
            let next = [p[0] + chain.link_length * theta.cos(), p[1] + chain.link_length * theta.sin()];
            let seg = (p, next);
            p = next;
            seg
        })
        .collect())
}

/// Workspace, state bounds, acceleration limits and robot.
#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    q_bounds: Vec<(f64, f64)>,
    v_bounds: Vec<(f64, f64)>,
    accel: Vec<AccelBounds>,
    obstacles: Vec<Polygon>,
    robot: RobotModel,
}

impl Scene {
    pub fn new(
        q_bounds: Vec<(f64, f64)>,
        v_bounds: Vec<(f64, f64)>,
        accel: Vec<AccelBounds>,
        obstacles: Vec<Polygon>,
        robot: RobotModel,
    ) -> Result<Self> {
        let n = q_bounds.len();
        if n == 0 {
            return Err(Error::InvalidScene("scene needs at least one axis".into()));
        }
        for (name, len) in [("v_bounds", v_bounds.len()), ("accel_bounds", accel.len())] {
            if len != n {
                return Err(Error::InvalidScene(format!("{name} has {len} axes, q_bounds has {n}")));
            }
        }
        for (name, bounds) in [("q_bounds", &q_bounds), ("v_bounds", &v_bounds)] {
            if let Some(i) = bounds.iter().position(|&(lo, hi)| !(lo.is_finite() && hi.is_finite() && lo < hi)) {
                return Err(Error::InvalidScene(format!("{name}[{i}] is not a nonempty finite interval")));
            }
        }
        if let Some(i) = accel.iter().position(|b| !(b.min < 0.0 && b.max > 0.0)) {
            return Err(Error::InvalidScene(format!("accel_bounds[{i}] must straddle zero")));
        }
        match &robot {
            RobotModel::Point { radius } => {
                if n != 2 {
                    return Err(Error::InvalidScene(format!("point robot needs 2 axes, scene has {n}")));
                }
                if !(*radius >= 0.0) {
                    return Err(Error::InvalidScene("robot radius must be nonnegative".into()));
                }
            }
            RobotModel::Chain(c) => {
                if c.links != n {
                    return Err(Error::InvalidScene(format!("chain has {} links, scene has {n} axes", c.links)));
                }
                if !(c.link_length > 0.0) {
                    return Err(Error::InvalidScene("link length must be positive".into()));
                }
            }
        }
        Ok(Self { q_bounds, v_bounds, accel, obstacles, robot })
    }

    /// Planar vehicle scene in `[x0, x1] × [y0, y1]` with symmetric speed and
    /// acceleration limits.
    pub fn planar(
        lo: Point,
        hi: Point,
        max_speed: f64,
        max_accel: f64,
        obstacles: Vec<Polygon>,
        radius: f64,
    ) -> Result<Self> {
        Self::new(
            vec![(lo[0], hi[0]), (lo[1], hi[1])],
            vec![(-max_speed, max_speed); 2],
            vec![AccelBounds::symmetric(max_accel); 2],
            obstacles,
            RobotModel::Point { radius },
        )
    }

    pub fn dim(&self) -> usize {
        self.q_bounds.len()
    }

    pub fn q_bounds(&self) -> &[(f64, f64)] {
        &self.q_bounds
    }

    pub fn v_bounds(&self) -> &[(f64, f64)] {
        &self.v_bounds
    }

    pub fn accel(&self) -> &[AccelBounds] {
        &self.accel
    }

    pub fn obstacles(&self) -> &[Polygon] {
        &self.obstacles
    }

    pub fn robot(&self) -> &RobotModel {
        &self.robot
    }
}
