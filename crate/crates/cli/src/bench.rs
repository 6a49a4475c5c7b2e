//! Seeded benchmark batches and their CSV summary.

use crate::format::sig9;
use crate::scene_file::LoadedScene;
use crate::{CliError, CliResult};
use bangbang::optimize::{lift_and_optimize, plan_and_optimize, ShortcutConfig};
use bangbang::planners::{
    baseline_rrt_bidirectional, bb_rrt_bidirectional, rrt_connect_geometric, BaselineParams, GeometricParams, Metric,
    Outcome, PlanQuery, PlanResult,
};
use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

pub const CSV_HEADER: &str = "seed,outcome,runtime_s,nodes,collision_checks,traj_time";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    BbRrt,
    RrtBi,
    RrtConnect,
    BbOpt,
    LiftOpt,
}

impl Method {
    pub const ALL: [Method; 5] = [Method::BbRrt, Method::RrtBi, Method::RrtConnect, Method::BbOpt, Method::LiftOpt];

    pub fn name(self) -> &'static str {
        match self {
            Method::BbRrt => "bb-rrt",
            Method::RrtBi => "rrt-bi",
            Method::RrtConnect => "rrt-connect",
            Method::BbOpt => "bb-opt",
            Method::LiftOpt => "lift-opt",
        }
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Method::ALL.into_iter().find(|m| m.name() == s).ok_or_else(|| {
            format!("unknown method {s:?}; expected one of bb-rrt, rrt-bi, rrt-connect, bb-opt, lift-opt")
        })
    }
}

#[derive(Debug, Clone)]
pub struct BenchSpec {
    pub scene: LoadedScene,
    pub method: Method,
    pub runs: usize,
    pub base_seed: u64,
    /// Iteration budget of the kinodynamic planners.
    pub iterations: usize,
    pub metric: Metric,
    pub baseline: BaselineParams,
    /// Seed is replaced by the run seed.
    pub shortcut: ShortcutConfig,
    /// Seed is replaced by the run seed.
    pub geometric: GeometricParams,
    pub threads: usize,
    /// When false, runtimes are left blank so the CSV depends only on the BenchSpec.
    pub timing: bool,
}

impl BenchSpec {
    pub fn new(scene: LoadedScene, method: Method) -> Self {
        let mut shortcut = ShortcutConfig::for_scene(&scene.scene);
        shortcut.resolution = scene.resolution;
        let geometric = GeometricParams::for_scene(&scene.scene);
        Self {
            scene,
            method,
            runs: 1,
            base_seed: 0,
            iterations: 10_000,
            metric: Metric::Rho1,
            baseline: BaselineParams::default(),
            shortcut,
            geometric,
            threads: 1,
            timing: true,
        }
    }

    fn query(&self, seed: u64) -> CliResult<PlanQuery<'_>> {
        let (start, goal) = self.scene.require_query()?;
        Ok(PlanQuery::new(&self.scene.scene, start, goal)
            .with_seed(seed)
            .with_iterations(self.iterations)
            .with_metric(self.metric)
            .with_resolution(self.scene.resolution))
    }

    /// One planner invocation; planner failure is a row, bad input an error.
    pub fn run_one(&self, seed: u64) -> CliResult<RunRow> {
        let clock = Instant::now();
        let row = |r: PlanResult| RunRow {
            seed,
            outcome: r.outcome,
            runtime_s: 0.0,
            nodes: r.stats.nodes,
            collision_checks: r.stats.collision_checks,
            traj_time: r.traj_time(),
        };
        let mut out = match self.method {
            Method::BbRrt => row(bb_rrt_bidirectional(&self.query(seed)?)?),
            Method::RrtBi => row(baseline_rrt_bidirectional(&self.query(seed)?, &self.baseline)?),
            Method::BbOpt => row(plan_and_optimize(&self.query(seed)?, &self.shortcut.clone().with_seed(seed))?),
            Method::RrtConnect => {
                let (a, b) = self.scene.require_query()?;
                let p = rrt_connect_geometric(&self.scene.scene, &a.q, &b.q, &self.geometric.clone().with_seed(seed))?;
                RunRow {
                    seed,
                    outcome: if p.path.is_some() { Outcome::Solution } else { Outcome::Failure },
                    runtime_s: 0.0,
                    nodes: p.stats.nodes,
                    collision_checks: p.stats.collision_checks,
                    traj_time: None,
                }
            }
            Method::LiftOpt => {
                let (a, b) = self.scene.require_query()?;
                let g = self.geometric.clone().with_seed(seed);
                row(lift_and_optimize(&self.scene.scene, &a.q, &b.q, &g, &self.shortcut.clone().with_seed(seed))?)
            }
        };
        out.runtime_s = clock.elapsed().as_secs_f64();
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunRow {
    pub seed: u64,
    pub outcome: Outcome,
    pub runtime_s: f64,
    pub nodes: usize,
    pub collision_checks: usize,
    /// Absent on failure and for purely geometric methods.
    pub traj_time: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub mean: f64,
    pub median: f64,
    pub stddev: f64,
}

impl Summary {
    /// `None` for an empty sample; the deviation uses `n − 1`.
    pub fn of(xs: &[f64]) -> Option<Summary> {
        if xs.is_empty() {
            return None;
        }
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let var = if xs.len() > 1 { xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0) } else { 0.0 };
        Some(Summary { mean, median: median(xs), stddev: var.sqrt() })
    }
}

pub fn median(xs: &[f64]) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchStats {
    pub method: Method,
    pub rows: Vec<RunRow>,
    pub timing: bool,
}

impl BenchStats {
    pub fn solved(&self) -> usize {
        self.rows.iter().filter(|r| r.outcome == Outcome::Solution).count()
    }

    pub fn runtime(&self) -> Option<Summary> {
        Summary::of(&self.rows.iter().map(|r| r.runtime_s).collect::<Vec<_>>())
    }

    pub fn nodes(&self) -> Option<Summary> {
        Summary::of(&self.rows.iter().map(|r| r.nodes as f64).collect::<Vec<_>>())
    }

    pub fn collision_checks(&self) -> Option<Summary> {
        Summary::of(&self.rows.iter().map(|r| r.collision_checks as f64).collect::<Vec<_>>())
    }

    /// Over runs that produced a trajectory.
    pub fn traj_time(&self) -> Option<Summary> {
        Summary::of(&self.rows.iter().filter_map(|r| r.traj_time).collect::<Vec<_>>())
    }

    /// One line per run in seed order, then `mean`, `median` and `stddev`
    /// rows whose outcome column reads `solved=k/n`.
    pub fn to_csv(&self) -> String {
        let mut s = format!("{CSV_HEADER}\n");
        let opt = |x: Option<f64>| x.map(sig9).unwrap_or_default();
        for r in &self.rows {
            let outcome = match r.outcome {
                Outcome::Solution => "Solution",
                Outcome::Failure => "Failure",
            };
            let runtime = if self.timing { sig9(r.runtime_s) } else { String::new() };
            let _ =
                writeln!(s, "{},{outcome},{runtime},{},{},{}", r.seed, r.nodes, r.collision_checks, opt(r.traj_time));
        }
        let solved = format!("solved={}/{}", self.solved(), self.rows.len());
        let (rt, nodes, checks, traj) = (self.runtime(), self.nodes(), self.collision_checks(), self.traj_time());
        for (label, pick) in [
            ("mean", (|s: Summary| s.mean) as fn(Summary) -> f64),
            ("median", |s: Summary| s.median),
            ("stddev", |s: Summary| s.stddev),
        ] {
            let runtime = if self.timing { opt(rt.map(pick)) } else { String::new() };
            let _ = writeln!(
                s,
                "{label},{solved},{runtime},{},{},{}",
                opt(nodes.map(pick)),
                opt(checks.map(pick)),
                opt(traj.map(pick))
            );
        }
        s
    }
}

/// Runs seeds `base_seed..base_seed + runs`, fanned out over
/// `spec.threads` workers; rows come back in seed order.
pub fn run_bench(spec: &BenchSpec) -> CliResult<BenchStats> {
    if spec.runs == 0 {
        return Err(CliError::invalid("runs", "must be at least 1"));
    }
    let seeds: Vec<u64> = (0..spec.runs as u64).map(|k| spec.base_seed.wrapping_add(k)).collect();
    let threads = spec.threads.clamp(1, spec.runs);
    let rows = if threads == 1 {
        seeds.iter().map(|&s| spec.run_one(s)).collect::<CliResult<Vec<_>>>()?
    } else {
        let next = AtomicUsize::new(0);
        let slots: Mutex<Vec<Option<CliResult<RunRow>>>> = Mutex::new((0..spec.runs).map(|_| None).collect());
        std::thread::scope(|scope| {
            for _ in 0..threads {
                scope.spawn(|| loop {
                    let k = next.fetch_add(1, Ordering::Relaxed);
                    if k >= seeds.len() {
                        break;
                    }
                    let r = spec.run_one(seeds[k]);
                    slots.lock().expect("no worker panics while holding the lock")[k] = Some(r);
                });
            }
        });
        slots
            .into_inner()
            .expect("workers joined")
            .into_iter()
            .map(|r| r.expect("every seed ran"))
            .collect::<CliResult<Vec<_>>>()?
    };
    Ok(BenchStats { method: spec.method, rows, timing: spec.timing })
}
