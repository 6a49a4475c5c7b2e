use crate::error::{Error, Result};
use crate::state::PhaseState;
use crate::steering::{AccelBounds, Control1, ControlSegment};
use crate::trajectory::Trajectory;

/// Lifts a polyline in configuration space to a trajectory that visits every
/// vertex at rest and moves along each edge with one accelerate/decelerate
/// pair shared by all axes.
///
/// Each axis is normalized by its tighter bound magnitude; in normalized
/// coordinates the largest unit-direction component saturates at 1.
pub fn bang_bang_transform(path: &[Vec<f64>], bounds: &[AccelBounds]) -> Result<Trajectory> {
    let first = path.first().ok_or_else(|| Error::InvalidArgument("path has no vertices".into()))?;
    let n = bounds.len();
    if let Some(q) = path.iter().find(|q| q.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, got: q.len() });
    }
    let scale: Vec<f64> = bounds.iter().map(AccelBounds::tighter_magnitude).collect();
    let mut axes = vec![Vec::new(); n];
    for w in path.windows(2) {
        let v: Vec<f64> = w[1].iter().zip(&w[0]).zip(&scale).map(|((b, a), m)| (b - a) / m).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let s = v.iter().map(|x| (x / norm).abs()).fold(0.0, f64::max);
        let t = (s * norm).sqrt();
        for (i, axis) in axes.iter_mut().enumerate() {
            let a = scale[i] * (v[i] / norm) / s;
            axis.push(ControlSegment::new(a, t));
            axis.push(ControlSegment::new(-a, t));
        }
    }
    let start = PhaseState::at_rest(first.clone());
    Trajectory::new(start, axes.into_iter().map(Control1::new).collect())
}
