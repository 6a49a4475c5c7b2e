use crate::error::{Error, Result};
use crate::state::PhaseState;
use crate::trajectory::Trajectory;

/// Whether edges leave the root forward in time (start tree) or lead into
/// it (goal tree, grown in reverse time).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeRole {
    Start,
    Goal,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TreeNode {
    pub state: PhaseState,
    pub parent: Option<usize>,
    /// Forward-executable edge: parent → node for start trees, node →
    /// parent for goal trees.
    pub edge: Option<Trajectory>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Tree {
    pub role: TreeRole,
    pub nodes: Vec<TreeNode>,
}

impl Tree {
    pub fn new(role: TreeRole, root: PhaseState) -> Self {
        Self { role, nodes: vec![TreeNode { state: root, parent: None, edge: None }] }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn add(&mut self, state: PhaseState, parent: usize, edge: Trajectory) -> usize {
        self.nodes.push(TreeNode { state, parent: Some(parent), edge: Some(edge) });
        self.nodes.len() - 1
    }

    /// Edges between the root and `idx`, in execution order.
    fn edges(&self, idx: usize) -> Vec<&Trajectory> {
        let mut edges = Vec::new();
        let mut cur = idx;
        while let Some(parent) = self.nodes[cur].parent {
            edges.extend(self.nodes[cur].edge.as_ref());
            cur = parent;
        }
        if self.role == TreeRole::Start {
            edges.reverse();
        }
        edges
    }

    /// Forward trajectory root → `idx` (start tree) or `idx` → root (goal tree).
    pub fn path_trajectory(&self, idx: usize) -> Result<Trajectory> {
        let origin = match self.role {
            TreeRole::Start => 0,
            TreeRole::Goal => idx,
        };
        let mut traj = Trajectory::stationary(self.nodes[origin].state.clone());
        for e in self.edges(idx) {
            traj = traj.concat(e)?;
        }
        Ok(traj)
    }

    /// Checks that every edge joins its two nodes' stored states within `tol`.
    pub fn check_consistency(&self, tol: f64) -> Result<()> {
        for (i, node) in self.nodes.iter().enumerate() {
            let (Some(p), Some(edge)) = (node.parent, &node.edge) else {
                if i != 0 || node.parent.is_some() || node.edge.is_some() {
                    return Err(Error::ContractViolation(format!("node {i} is detached")));
                }
                continue;
            };
            let (head, tail) = match self.role {
                TreeRole::Start => (&self.nodes[p].state, &node.state),
                TreeRole::Goal => (&node.state, &self.nodes[p].state),
            };
            let d = edge.start().max_abs_diff(head).max(edge.end_state().max_abs_diff(tail));
            if d > tol {
                return Err(Error::ContractViolation(format!("edge into node {i} misses its endpoints by {d:e}")));
            }
        }
        Ok(())
    }

    pub fn states(&self) -> impl Iterator<Item = &PhaseState> {
        self.nodes.iter().map(|n| &n.state)
    }
}
