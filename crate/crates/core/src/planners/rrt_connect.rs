//! Geometric RRT-Connect over configurations only.

use super::PlanStats;
use crate::error::{Error, Result};
use crate::rng::seeded;
use crate::world::{config_free, segment_free, RobotModel, Scene};
use rand::Rng;
use std::time::Instant;

#[derive(Debug, Clone, PartialEq)]
pub struct GeometricParams {
    /// Largest Euclidean extension per step.
    pub step: f64,
    pub max_iterations: usize,
    pub seed: u64,
    /// Largest spacing of configurations checked along each segment.
    pub resolution: f64,
}

impl GeometricParams {
    /// Defaults scaled to the scene: a step of 1/40 of the workspace diagonal
    /// for vehicles, `0.1·√n` rad for chains.
    pub fn for_scene(scene: &Scene) -> Self {
        let (step, resolution) = match scene.robot() {
            RobotModel::Point { .. } => {
                let diag = scene.q_bounds().iter().map(|(lo, hi)| (hi - lo).powi(2)).sum::<f64>().sqrt();
                (diag / 40.0, 2.0)
            }
            RobotModel::Chain(_) => (0.1 * (scene.dim() as f64).sqrt(), 0.05),
        };
        Self { step, max_iterations: 10_000, seed: 0, resolution }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeometricPlan {
    /// Vertices of a free polyline from the start to the goal configuration.
    pub path: Option<Vec<Vec<f64>>>,
    pub stats: PlanStats,
}

struct Node {
    q: Vec<f64>,
    parent: Option<usize>,
}

enum Extend {
    Trapped,
    Advanced(usize),
    Reached(usize),
}

struct Search<'a> {
    scene: &'a Scene,
    params: &'a GeometricParams,
    checks: usize,
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

impl Search<'_> {
    fn free_segment(&mut self, a: &[f64], b: &[f64]) -> bool {
        let (ok, n) = segment_free(self.scene, a, b, self.params.resolution);
        self.checks += n;
        ok
    }

    fn extend(&mut self, tree: &mut Vec<Node>, target: &[f64]) -> Extend {
        let near = (0..tree.len()).map(|i| (i, distance(&tree[i].q, target))).fold((0, f64::INFINITY), |b, c| {
            if c.1 < b.1 {
                c
            } else {
                b
            }
        });
        let from = &tree[near.0].q;
        let (q, reached) = if near.1 <= self.params.step {
            (target.to_vec(), true)
        } else {
            let u = self.params.step / near.1;
            (from.iter().zip(target).map(|(x, y)| x + u * (y - x)).collect(), false)
        };
        if !self.free_segment(&from.clone(), &q) {
            return Extend::Trapped;
        }
        tree.push(Node { q, parent: Some(near.0) });
        let i = tree.len() - 1;
        if reached {
            Extend::Reached(i)
        } else {
            Extend::Advanced(i)
        }
    }

    fn connect(&mut self, tree: &mut Vec<Node>, target: &[f64]) -> Extend {
        loop {
            match self.extend(tree, target) {
                Extend::Advanced(_) => continue,
                other => return other,
            }
        }
    }
}

fn branch(tree: &[Node], mut i: usize) -> Vec<Vec<f64>> {
    let mut out = vec![tree[i].q.clone()];
    while let Some(p) = tree[i].parent {
        out.push(tree[p].q.clone());
        i = p;
    }
    out
}

/// Bidirectional RRT with the connect heuristic. The straight segment is
/// tried first, so an unobstructed query returns two vertices.
pub fn rrt_connect_geometric(
    scene: &Scene,
    q_start: &[f64],
    q_goal: &[f64],
    params: &GeometricParams,
) -> Result<GeometricPlan> {
    let n = scene.dim();
    for (name, q) in [("start", q_start), ("goal", q_goal)] {
        if q.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: q.len() });
        }
        if !config_free(scene, q) {
            return Err(Error::InvalidArgument(format!("{name} configuration is in collision or out of bounds")));
        }
    }
    if !(params.step > 0.0 && params.resolution > 0.0) {
        return Err(Error::InvalidArgument("step and resolution must be positive".into()));
    }
    let clock = Instant::now();
    let mut search = Search { scene, params, checks: 0 };
    let mut stats = PlanStats::default();
    let finish = |search: &Search, mut stats: PlanStats, nodes: usize, path: Option<Vec<Vec<f64>>>| {
        stats.nodes = nodes;
        stats.collision_checks = search.checks;
        stats.wall_time = clock.elapsed().as_secs_f64();
        GeometricPlan { path, stats }
    };
    if q_start == q_goal {
        return Ok(finish(&search, stats, 1, Some(vec![q_start.to_vec()])));
    }
    if search.free_segment(q_start, q_goal) {
        return Ok(finish(&search, stats, 2, Some(vec![q_start.to_vec(), q_goal.to_vec()])));
    }
    let mut rng = seeded(params.seed);
    let mut trees = [vec![Node { q: q_start.to_vec(), parent: None }], vec![Node { q: q_goal.to_vec(), parent: None }]];
    let mut a = 0;
    while stats.iterations < params.max_iterations {
        stats.iterations += 1;
        let sample: Vec<f64> = scene.q_bounds().iter().map(|&(lo, hi)| rng.gen_range(lo..hi)).collect();
        let b = 1 - a;
        let new = match search.extend(&mut trees[a], &sample) {
            Extend::Advanced(i) | Extend::Reached(i) => i,
            Extend::Trapped => {
                a = b;
                continue;
            }
        };
        let target = trees[a][new].q.clone();
        if let Extend::Reached(j) = search.connect(&mut trees[b], &target) {
            let (i_start, i_goal) = if a == 0 { (new, j) } else { (j, new) };
            let mut path = branch(&trees[0], i_start);
            path.reverse();
            // The join vertex appears at the end of both branches.
            path.extend(branch(&trees[1], i_goal).into_iter().skip(1));
            let nodes = trees[0].len() + trees[1].len();
            return Ok(finish(&search, stats, nodes, Some(path)));
        }
        a = b;
    }
    let nodes = trees[0].len() + trees[1].len();
    Ok(finish(&search, stats, nodes, None))
}
