//! Static SVG pictures of scenes, trees and trajectories.

use crate::{CliError, CliResult};
use bangbang::planners::Tree;
use bangbang::world::{fk_chain, Point};
use bangbang::{RobotModel, Scene, Trajectory};
use std::fmt::Write as _;

const WIDTH: f64 = 800.0;
const MARGIN: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderMode {
    Workspace,
    /// The `(q, q̇)` plane of one axis.
    Phase {
        axis: usize,
    },
}

#[derive(Debug, Clone, Default)]
pub struct Artifacts {
    pub trajectories: Vec<Trajectory>,
    pub trees: Vec<Tree>,
    /// Configuration-space polylines.
    pub paths: Vec<Vec<Vec<f64>>>,
}

/// Configurations at `per_piece + 1` evenly spaced times within every
/// stretch of constant control, so each parabolic arc is sampled on its own.
pub fn sample_configurations(traj: &Trajectory, per_piece: usize) -> Vec<Vec<f64>> {
    sample_times(traj, per_piece).into_iter().map(|t| traj.evaluate(t).expect("time within range").q).collect()
}

fn sample_times(traj: &Trajectory, per_piece: usize) -> Vec<f64> {
    let mut knots = vec![0.0];
    knots.extend(traj.switch_times());
    knots.push(traj.duration());
    let k = per_piece.max(1);
    let mut out = vec![0.0];
    for w in knots.windows(2) {
        out.extend((1..=k).map(|j| if j == k { w[1] } else { w[0] + (w[1] - w[0]) * j as f64 / k as f64 }));
    }
    out
}

/// Workspace points marking configuration `q`: the point itself, or the
/// base and every joint of a chain.
fn body(scene: &Scene, q: &[f64]) -> Vec<Point> {
    match scene.robot() {
        RobotModel::Point { .. } => vec![[q[0], q[1]]],
        RobotModel::Chain(c) => {
            let segs = fk_chain(c, q).expect("dimension checked");
            std::iter::once(c.base).chain(segs.iter().map(|s| s.1)).collect()
        }
    }
}

/// Where the robot is drawn as a moving point: the centre or the chain tip.
fn marker(scene: &Scene, q: &[f64]) -> Point {
    *body(scene, q).last().expect("nonempty body")
}

struct Canvas {
    lo: Point,
    hi: Point,
    scale: f64,
    height: f64,
    body: String,
}

impl Canvas {
    fn new(lo: Point, hi: Point) -> Self {
        let span = [(hi[0] - lo[0]).max(1e-9), (hi[1] - lo[1]).max(1e-9)];
        let scale = (WIDTH - 2.0 * MARGIN) / span[0];
        let height = (span[1] * scale + 2.0 * MARGIN).clamp(100.0, 4.0 * WIDTH);
        let scale = scale.min((height - 2.0 * MARGIN) / span[1]);
        Canvas { lo, hi, scale, height, body: String::new() }
    }

    fn map(&self, p: Point) -> (f64, f64) {
        (MARGIN + (p[0] - self.lo[0]) * self.scale, self.height - MARGIN - (p[1] - self.lo[1]) * self.scale)
    }

    fn coords(&self, pts: &[Point]) -> String {
        let mut s = String::new();
        for &p in pts {
            let (x, y) = self.map(p);
            let _ = write!(s, "{x:.2},{y:.2} ");
        }
        s.trim_end().to_string()
    }

    fn polyline(&mut self, pts: &[Point], stroke: &str, width: f64) {
        if pts.len() < 2 {
            return;
        }
        let c = self.coords(pts);
        let _ = writeln!(self.body, r#"<polyline points="{c}" fill="none" stroke="{stroke}" stroke-width="{width}"/>"#);
    }

    fn polygon(&mut self, pts: &[Point], fill: &str) {
        let c = self.coords(pts);
        let _ = writeln!(self.body, r#"<polygon points="{c}" fill="{fill}" stroke="black" stroke-width="0.5"/>"#);
    }

    fn circle(&mut self, p: Point, r: f64, fill: &str) {
        let (x, y) = self.map(p);
        let _ = writeln!(self.body, r#"<circle cx="{x:.2}" cy="{y:.2}" r="{r}" fill="{fill}"/>"#);
    }

    fn finish(self) -> String {
        let (w, h) = (WIDTH, self.height);
        let mut s = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h:.0}\" viewBox=\"0 0 {w} {h:.0}\">\n"
        );
        let (x0, y1) = self.map(self.lo);
        let (x1, y0) = self.map(self.hi);
        let _ = writeln!(
            s,
            r#"<rect x="{x0:.2}" y="{y0:.2}" width="{:.2}" height="{:.2}" fill="white" stroke="gray"/>"#,
            x1 - x0,
            y1 - y0
        );
        s.push_str(&self.body);
        s.push_str("</svg>\n");
        s
    }
}

fn extent(points: impl IntoIterator<Item = Point>) -> Option<(Point, Point)> {
    points.into_iter().fold(None, |acc, p| {
        let (lo, hi) = acc.unwrap_or((p, p));
        Some(([lo[0].min(p[0]), lo[1].min(p[1])], [hi[0].max(p[0]), hi[1].max(p[1])]))
    })
}

fn pad((lo, hi): (Point, Point), frac: f64) -> (Point, Point) {
    let d = [(hi[0] - lo[0]).max(1e-6) * frac, (hi[1] - lo[1]).max(1e-6) * frac];
    ([lo[0] - d[0], lo[1] - d[1]], [hi[0] + d[0], hi[1] + d[1]])
}

fn check_dims(scene: &Scene, artifacts: &Artifacts) -> CliResult<()> {
    let n = scene.dim();
    let bad = |what: &str, got: usize| CliError::invalid(what, format!("has {got} axes, scene has {n}"));
    if let Some(t) = artifacts.trajectories.iter().find(|t| t.dim() != n) {
        return Err(bad("trajectory", t.dim()));
    }
    if let Some(t) = artifacts.trees.iter().find(|t| t.nodes[0].state.dim() != n) {
        return Err(bad("tree", t.nodes[0].state.dim()));
    }
    if let Some(q) = artifacts.paths.iter().flatten().find(|q| q.len() != n) {
        return Err(bad("path", q.len()));
    }
    Ok(())
}

fn tree_edges(tree: &Tree) -> impl Iterator<Item = &Trajectory> {
    tree.nodes.iter().filter_map(|n| n.edge.as_ref())
}

pub fn render_svg(scene: &Scene, artifacts: &Artifacts, mode: RenderMode) -> CliResult<String> {
    check_dims(scene, artifacts)?;
    match mode {
        RenderMode::Workspace => Ok(workspace(scene, artifacts)),
        RenderMode::Phase { axis } if axis < scene.dim() => Ok(phase(scene, artifacts, axis)),
        RenderMode::Phase { axis } => {
            Err(CliError::invalid("axis", format!("{axis} out of range for {} axes", scene.dim())))
        }
    }
}

fn workspace(scene: &Scene, art: &Artifacts) -> String {
    let frame = match scene.robot() {
        RobotModel::Point { .. } => {
            let b = scene.q_bounds();
            ([b[0].0, b[1].0], [b[0].1, b[1].1])
        }
        RobotModel::Chain(c) => {
            let r = c.links as f64 * c.link_length;
            ([c.base[0] - r, c.base[1] - r], [c.base[0] + r, c.base[1] + r])
        }
    };
    let obstacle_pts = scene.obstacles().iter().flat_map(|o| o.vertices().iter().copied());
    let (lo, hi) = extent(obstacle_pts.chain([frame.0, frame.1])).expect("frame is nonempty");
    let mut cv = Canvas::new(lo, hi);
    for o in scene.obstacles() {
        cv.polygon(o.vertices(), "#999999");
    }
    for (k, tree) in art.trees.iter().enumerate() {
        let colour = if k % 2 == 0 { "#4a90d9" } else { "#d98b4a" };
        for e in tree_edges(tree) {
            let pts: Vec<Point> = sample_configurations(e, 6).iter().map(|q| marker(scene, q)).collect();
            cv.polyline(&pts, colour, 0.6);
        }
    }
    let chain = matches!(scene.robot(), RobotModel::Chain(_));
    for path in &art.paths {
        if chain {
            for q in path {
                cv.polyline(&body(scene, q), "#7a7a7a", 0.8);
            }
        }
        let pts: Vec<Point> = path.iter().map(|q| marker(scene, q)).collect();
        cv.polyline(&pts, "#2e8b57", 1.5);
    }
    for traj in &art.trajectories {
        if chain {
            for j in 0..=8 {
                let q = traj.evaluate(traj.duration() * j as f64 / 8.0).expect("time within range").q;
                cv.polyline(&body(scene, &q), "#555555", 1.0);
            }
        }
        let pts: Vec<Point> = sample_configurations(traj, 16).iter().map(|q| marker(scene, q)).collect();
        cv.polyline(&pts, "#c0392b", 2.0);
        cv.circle(pts[0], 4.0, "#27ae60");
        cv.circle(*pts.last().expect("sampled"), 4.0, "black");
    }
    cv.finish()
}

/// Phase-plane samples of one axis, with the states where that axis
/// switches control.
fn phase_arcs(traj: &Trajectory, axis: usize, per_segment: usize) -> (Vec<Point>, Vec<Point>) {
    let mut x = traj.start().axis(axis);
    let mut pts = vec![[x.q, x.v]];
    let mut switches = Vec::new();
    let segs = &traj.axes()[axis].segments;
    for (i, s) in segs.iter().enumerate() {
        for j in 1..=per_segment {
            let y = x.advance(s.accel, s.duration * j as f64 / per_segment as f64);
            pts.push([y.q, y.v]);
        }
        x = x.advance(s.accel, s.duration);
        if i + 1 < segs.len() && s.duration > 0.0 {
            switches.push([x.q, x.v]);
        }
    }
    (pts, switches)
}

fn phase(scene: &Scene, art: &Artifacts, axis: usize) -> String {
    let arcs: Vec<(Vec<Point>, Vec<Point>)> = art.trajectories.iter().map(|t| phase_arcs(t, axis, 32)).collect();
    let tree_arcs: Vec<Vec<Point>> = art.trees.iter().flat_map(tree_edges).map(|e| phase_arcs(e, axis, 8).0).collect();
    let data = arcs.iter().flat_map(|a| a.0.iter()).chain(tree_arcs.iter().flatten()).copied();
    let (qb, vb) = (scene.q_bounds()[axis], scene.v_bounds()[axis]);
    let frame = extent(data).map(|e| pad(e, 0.05)).unwrap_or(([qb.0, vb.0], [qb.1, vb.1]));
    let mut cv = Canvas::new(frame.0, frame.1);
    if frame.0[1] < 0.0 && frame.1[1] > 0.0 {
        cv.polyline(&[[frame.0[0], 0.0], [frame.1[0], 0.0]], "#bbbbbb", 0.8);
    }
    for a in &tree_arcs {
        cv.polyline(a, "#4a90d9", 0.6);
    }
    for (pts, switches) in &arcs {
        cv.polyline(pts, "#c0392b", 2.0);
        cv.circle(pts[0], 4.0, "#27ae60");
        cv.circle(*pts.last().expect("sampled"), 4.0, "black");
        for &p in switches {
            cv.circle(p, 5.0, "#8e44ad");
        }
    }
    cv.finish()
}
