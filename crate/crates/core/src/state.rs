use crate::error::{Error, Result};
use crate::steering::PhaseState1;

/// Position and velocity vectors of an n-axis system, `x = (q, q̇)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseState {
    pub q: Vec<f64>,
    pub v: Vec<f64>,
}

impl PhaseState {
    pub fn new(q: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        if q.len() != v.len() {
            return Err(Error::DimensionMismatch { expected: q.len(), got: v.len() });
        }
        if q.iter().chain(v.iter()).any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument("phase state must be finite".into()));
        }
        Ok(Self { q, v })
    }

    /// A state with zero velocity at `q`.
    pub fn at_rest(q: Vec<f64>) -> Self {
        let v = vec![0.0; q.len()];
        Self { q, v }
    }

    pub fn dim(&self) -> usize {
        self.q.len()
    }

    pub fn axis(&self, i: usize) -> PhaseState1 {
        PhaseState1::new(self.q[i], self.v[i])
    }

    pub fn from_axes(axes: impl IntoIterator<Item = PhaseState1>) -> Self {
        let (q, v) = axes.into_iter().map(|s| (s.q, s.v)).unzip();
        Self { q, v }
    }

    /// Largest absolute componentwise difference.
    pub fn max_abs_diff(&self, other: &PhaseState) -> f64 {
        self.q.iter().zip(&other.q).chain(self.v.iter().zip(&other.v)).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &PhaseState, tol: f64) -> bool {
        self.dim() == other.dim() && self.max_abs_diff(other) <= tol
    }

    pub(crate) fn check_dim(&self, n: usize) -> Result<()> {
        if self.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, got: self.dim() });
        }
        Ok(())
    }
}
