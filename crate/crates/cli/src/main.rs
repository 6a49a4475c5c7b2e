use anyhow::{anyhow, Context};
use bangbang::optimize::{
    bang_bang_transform, lift_and_optimize, optimize_trajectory, plan_and_optimize, ShortcutConfig,
};
use bangbang::planners::{
    baseline_rrt_bidirectional, bb_rrt_explore, rrt_connect_geometric, BaselineParams, GeometricParams, Metric,
    PlanQuery, PlanResult,
};
use bangbang::steering::steer_nd;
use bangbang::{AccelBounds, PhaseState, Trajectory};
use bangbang_cli::format::sig9;
use bangbang_cli::render::{render_svg, Artifacts, RenderMode};
use bangbang_cli::traj_file::trajectory_to_json;
use bangbang_cli::{load_scene, read_trajectory, run_bench, BenchSpec, LoadedScene, Method};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "bangbang", version, about = "Bang-bang steering, kinodynamic planning and shortcutting")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Time-optimal synchronized steering between two states.
    Steer(SteerArgs),
    /// Plan the scene's query.
    Plan(PlanArgs),
    /// Shortcut a trajectory file.
    Optimize(OptimizeArgs),
    /// Geometric plan, bang-bang transform, then shortcutting.
    Lift(LiftArgs),
    /// Seeded batch of runs, summarized as CSV.
    Bench(BenchArgs),
    /// Draw a scene and optional artifacts as SVG.
    Render(RenderArgs),
}

#[derive(Args)]
struct SteerArgs {
    /// Start positions, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    from: Vec<f64>,
    /// Start velocities (default zero).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    from_v: Vec<f64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    to: Vec<f64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    to_v: Vec<f64>,
    /// Take acceleration bounds from this scene.
    #[arg(long, conflicts_with_all = ["a_max", "a_min"])]
    scene: Option<PathBuf>,
    #[arg(long, default_value_t = 1.0)]
    a_max: f64,
    /// Defaults to -a_max.
    #[arg(long, allow_hyphen_values = true)]
    a_min: Option<f64>,
    /// Write the trajectory JSON here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Unused; steering is deterministic.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    Rho1,
    Rho2,
}

impl From<MetricArg> for Metric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::Rho1 => Metric::Rho1,
            MetricArg::Rho2 => Metric::Rho2,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PlanMethod {
    BbRrt,
    RrtBi,
    RrtConnect,
    BbOpt,
}

#[derive(Args)]
struct PlanArgs {
    #[arg(long)]
    scene: PathBuf,
    #[arg(long, value_enum, default_value = "bb-rrt")]
    method: PlanMethod,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Iteration budget K.
    #[arg(long, default_value_t = 10_000)]
    iterations: usize,
    #[arg(long, value_enum, default_value = "rho1")]
    metric: MetricArg,
    /// Trajectory JSON (or, for rrt-connect, its lifted trajectory).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ShortcutArgs {
    #[arg(long, default_value_t = 10_000)]
    max_iterations: usize,
    #[arg(long, default_value_t = 200)]
    stall_window: usize,
    #[arg(long, default_value_t = 0.1)]
    stall_epsilon: f64,
}

impl ShortcutArgs {
    fn config(&self, scene: &LoadedScene, seed: u64) -> ShortcutConfig {
        let mut c = ShortcutConfig::for_scene(&scene.scene).with_seed(seed);
        c.resolution = scene.resolution;
        c.max_iterations = self.max_iterations;
        c.stall_window = self.stall_window;
        c.stall_epsilon = self.stall_epsilon;
        c
    }
}

#[derive(Args)]
struct OptimizeArgs {
    #[arg(long)]
    scene: PathBuf,
    #[arg(long)]
    trajectory: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    shortcut: ShortcutArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct LiftArgs {
    #[arg(long)]
    scene: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    shortcut: ShortcutArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    scene: PathBuf,
    /// bb-rrt, rrt-bi, rrt-connect, bb-opt or lift-opt.
    #[arg(long)]
    method: Method,
    #[arg(long, default_value_t = 100)]
    runs: usize,
    /// Seed of the first run; run k uses seed + k.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10_000)]
    iterations: usize,
    #[arg(long, value_enum, default_value = "rho1")]
    metric: MetricArg,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Leave runtimes blank so repeated runs give identical files.
    #[arg(long)]
    no_timing: bool,
    /// CSV destination (default stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Workspace,
    Phase,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(long)]
    scene: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Trajectory files to draw; repeatable.
    #[arg(long)]
    trajectory: Vec<PathBuf>,
    /// Run BB-RRT on the scene query and draw both trees and the solution.
    #[arg(long)]
    trees: bool,
    #[arg(long, value_enum, default_value = "workspace")]
    mode: ModeArg,
    /// Axis drawn in phase mode.
    #[arg(long, default_value_t = 0)]
    axis: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Why a command did not succeed; selects the exit code.
enum Failure {
    Planner(String),
    Input(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.into())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let r = match cli.command {
        Command::Steer(a) => steer(a),
        Command::Plan(a) => plan(a),
        Command::Optimize(a) => optimize(a),
        Command::Lift(a) => lift(a),
        Command::Bench(a) => bench(a),
        Command::Render(a) => render(a),
    };
    match r {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Planner(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn state(q: &[f64], v: &[f64], what: &str) -> anyhow::Result<PhaseState> {
    let v = if v.is_empty() { vec![0.0; q.len()] } else { v.to_vec() };
    PhaseState::new(q.to_vec(), v).with_context(|| format!("{what} state"))
}

fn write_out(path: &Path, text: &str) -> anyhow::Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn save(out: &Option<PathBuf>, traj: &Trajectory) -> anyhow::Result<()> {
    match out {
        Some(p) => write_out(p, &trajectory_to_json(traj)),
        None => Ok(()),
    }
}

fn steer(a: SteerArgs) -> Outcome {
    let from = state(&a.from, &a.from_v, "start")?;
    let to = state(&a.to, &a.to_v, "goal")?;
    let bounds = match &a.scene {
        Some(p) => load_scene(p)?.scene.accel().to_vec(),
        None => vec![AccelBounds::new(a.a_min.unwrap_or(-a.a_max), a.a_max)?; from.dim()],
    };
    let plan = steer_nd(&from, &to, &bounds)?;
    println!("arrival_time {}", sig9(plan.arrival_time));
    for (i, c) in plan.per_axis.iter().enumerate() {
        let segs: Vec<String> =
            c.segments.iter().map(|s| format!("({}, {})", sig9(s.accel), sig9(s.duration))).collect();
        println!("axis {i}: {}", segs.join(" "));
    }
    save(&a.out, &Trajectory::from_plan(from, plan))?;
    Ok(())
}

fn print_result(r: &PlanResult) {
    println!("outcome {:?}", r.outcome);
    println!("iterations {}", r.stats.iterations);
    println!("nodes {}", r.stats.nodes);
    println!("collision_checks {}", r.stats.collision_checks);
    println!("runtime_s {}", sig9(r.stats.wall_time));
    if let Some(t) = r.stats.initial_traj_time {
        println!("initial_traj_time {}", sig9(t));
    }
    if let Some(t) = r.traj_time() {
        println!("traj_time {}", sig9(t));
    }
    if let Some(g) = r.stats.connection_gap {
        println!("connection_gap {}", sig9(g));
    }
    if let Some(t) = r.stats.connection_time {
        println!("connection_time {}", sig9(t));
    }
}

fn finish(r: PlanResult, out: &Option<PathBuf>) -> Outcome {
    print_result(&r);
    match &r.trajectory {
        Some(t) => Ok(save(out, t)?),
        None => Err(Failure::Planner("no solution within the iteration budget".into())),
    }
}

fn plan(a: PlanArgs) -> Outcome {
    let scene = load_scene(&a.scene)?;
    let (start, goal) = scene.require_query()?;
    let query = PlanQuery::new(&scene.scene, start.clone(), goal.clone())
        .with_seed(a.seed)
        .with_iterations(a.iterations)
        .with_metric(a.metric.into())
        .with_resolution(scene.resolution);
    let r = match a.method {
        PlanMethod::BbRrt => bb_rrt_explore(&query)?.result,
        PlanMethod::RrtBi => baseline_rrt_bidirectional(&query, &BaselineParams::default())?,
        PlanMethod::BbOpt => plan_and_optimize(
            &query,
            &ShortcutConfig {
                resolution: scene.resolution,
                ..ShortcutConfig::for_scene(&scene.scene).with_seed(a.seed)
            },
        )?,
        PlanMethod::RrtConnect => {
            let params = GeometricParams {
                max_iterations: a.iterations,
                ..GeometricParams::for_scene(&scene.scene).with_seed(a.seed)
            };
            let g = rrt_connect_geometric(&scene.scene, &start.q, &goal.q, &params)?;
            println!("nodes {}", g.stats.nodes);
            println!("collision_checks {}", g.stats.collision_checks);
            println!("runtime_s {}", sig9(g.stats.wall_time));
            let Some(path) = g.path else {
                return Err(Failure::Planner("no solution within the iteration budget".into()));
            };
            println!("vertices {}", path.len());
            let lifted = bang_bang_transform(&path, scene.scene.accel())?;
            println!("traj_time {}", sig9(lifted.duration()));
            save(&a.out, &lifted)?;
            return Ok(());
        }
    };
    finish(r, &a.out)
}

fn optimize(a: OptimizeArgs) -> Outcome {
    let scene = load_scene(&a.scene)?;
    let traj = read_trajectory(&a.trajectory)?;
    let (best, trace) = optimize_trajectory(&scene.scene, &traj, &a.shortcut.config(&scene, a.seed))?;
    println!("initial_traj_time {}", sig9(trace.initial_duration));
    println!("traj_time {}", sig9(best.duration()));
    println!("attempts {}", trace.records.len());
    println!("accepted {}", trace.accepted());
    println!("collision_checks {}", trace.checks);
    save(&a.out, &best)?;
    Ok(())
}

fn lift(a: LiftArgs) -> Outcome {
    let scene = load_scene(&a.scene)?;
    let (start, goal) = scene.require_query()?;
    let params = GeometricParams::for_scene(&scene.scene).with_seed(a.seed);
    let r = lift_and_optimize(&scene.scene, &start.q, &goal.q, &params, &a.shortcut.config(&scene, a.seed))?;
    finish(r, &a.out)
}

fn bench(a: BenchArgs) -> Outcome {
    let scene = load_scene(&a.scene)?;
    let mut spec = BenchSpec::new(scene, a.method);
    spec.runs = a.runs;
    spec.base_seed = a.seed;
    spec.iterations = a.iterations;
    spec.metric = a.metric.into();
    spec.threads = a.threads;
    spec.timing = !a.no_timing;
    let csv = run_bench(&spec)?.to_csv();
    match &a.out {
        Some(p) => write_out(p, &csv)?,
        None => print!("{csv}"),
    }
    Ok(())
}

fn render(a: RenderArgs) -> Outcome {
    let scene = load_scene(&a.scene)?;
    let mut art = Artifacts::default();
    for p in &a.trajectory {
        art.trajectories.push(read_trajectory(p)?);
    }
    if a.trees {
        let (start, goal) = scene.require_query()?;
        let query = PlanQuery::new(&scene.scene, start, goal).with_seed(a.seed).with_resolution(scene.resolution);
        let run = bb_rrt_explore(&query)?;
        art.trajectories.extend(run.result.trajectory);
        art.trees = vec![run.start_tree, run.goal_tree];
    }
    let mode = match a.mode {
        ModeArg::Workspace => RenderMode::Workspace,
        ModeArg::Phase => RenderMode::Phase { axis: a.axis },
    };
    let svg = render_svg(&scene.scene, &art, mode).map_err(|e| anyhow!(e))?;
    write_out(&a.out, &svg)?;
    Ok(())
}
