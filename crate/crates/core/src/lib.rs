//! Kinodynamic planning for vectors of double integrators built on
//! closed-form, time-optimal bang-bang steering.
//!
//! - [`steering`]: one-axis minimum-time and fixed-time steering, gap
//!   intervals, and line-sweep synchronization of many axes.
//! - [`trajectory`]: piecewise-constant-acceleration trajectories.
//! - [`world`]: scenes, robot models and collision checking.
//! - [`planners`]: bang-bang bidirectional RRT plus two baselines.
//! - [`optimize`]: shortcut optimization and the bang-bang path transform.
// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod optimize;
pub mod planners;
pub mod rng;
pub mod state;
pub mod steering;
pub mod trajectory;
pub mod world;

pub use error::{Error, Result};
pub use state::PhaseState;
pub use steering::{AccelBounds, Control1, ControlSegment, PhaseState1, SteeringPlan, WaitProfile};
pub use trajectory::Trajectory;
pub use world::{CollisionReport, RobotModel, Scene};
