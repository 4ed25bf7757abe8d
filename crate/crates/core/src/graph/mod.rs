//! All-terminal reliability model over undirected multigraphs.

mod algo;
mod classify;
mod named;
mod reliability;

pub use algo::{edge_connectivity, global_mincut, mst_cost, spanning_tree_count, DisjointSets, GlobalCut};
pub use classify::{classify, utility_and_difficulty, Category, GraphClass, UtilityDifficulty};
pub use named::NamedGraph;
pub use reliability::{
    find_feasible_assignment, reliability_closed_form, reliability_polynomial, ReliabilityPolynomial,
    DEFAULT_SUBSET_CAP,
};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::state::StateWord;

/// Undirected multigraph with optional per-edge weights and reliabilities.
///
/// Nodes are `0..node_count`. Edge order is the component order of the
/// induced all-terminal system. Parallel edges are allowed, self-loops are not.
#[derive(Clone, Debug, PartialEq)]
pub struct UndirectedGraph<T> {
    node_count: usize,
    edges: Vec<(usize, usize)>,
    edge_weights: Option<Vec<T>>,
    edge_probs: Option<Vec<T>>,
}

impl<T: Scalar> UndirectedGraph<T> {
    pub fn new(node_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if node_count == 0 {
            return Err(Error::Validation("graph needs at least one node".into()));
        }
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= node_count || v >= node_count {
                return Err(Error::Validation(format!(
                    "edge {} joins node {} and {} but the graph has {node_count} nodes",
                    i + 1,
                    u + 1,
                    v + 1
                )));
            }
            if u == v {
                return Err(Error::Validation(format!(
                    "edge {} is a self-loop at node {}",
                    i + 1,
                    u + 1
                )));
            }
        }
        Ok(UndirectedGraph {
            node_count,
            edges,
            edge_weights: None,
            edge_probs: None,
        })
    }

    pub fn with_weights(mut self, weights: Vec<T>) -> Result<Self> {
        self.check_edge_values("weight", &weights)?;
        if let Some(w) = weights.iter().find(|w| w.is_negative()) {
            return Err(Error::Validation(format!("negative edge weight {w}")));
        }
        self.edge_weights = Some(weights);
        Ok(self)
    }

    pub fn with_probs(mut self, probs: Vec<T>) -> Result<Self> {
        self.check_edge_values("probability", &probs)?;
        if let Some(p) = probs.iter().find(|p| p.is_negative() || **p > T::one()) {
            return Err(Error::Validation(format!("edge probability {p} outside [0,1]")));
        }
        self.edge_probs = Some(probs);
        Ok(self)
    }

    /// Same probability on every edge.
    pub fn with_uniform_prob(self, p: T) -> Result<Self> {
        let m = self.edge_count();
        self.with_probs(vec![p; m])
    }

    fn check_edge_values(&self, what: &str, values: &[T]) -> Result<()> {
        if values.len() != self.edges.len() {
            return Err(Error::Validation(format!(
                "{} edge {what} values for {} edges",
                values.len(),
                self.edges.len()
            )));
        }
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_weights(&self) -> Option<&[T]> {
        self.edge_weights.as_deref()
    }

    pub fn edge_probs(&self) -> Option<&[T]> {
        self.edge_probs.as_deref()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.node_count];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn component_count(&self) -> usize {
        let mut sets = DisjointSets::new(self.node_count);
        for &(u, v) in &self.edges {
            sets.union(u, v);
        }
        sets.set_count()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// `m - n + #components`.
    pub fn corank(&self) -> i64 {
        self.edges.len() as i64 - self.node_count as i64 + self.component_count() as i64
    }

    /// All-terminal structure function: are all nodes joined by operating edges?
    pub fn connects_all(&self, state: &StateWord) -> Result<bool> {
        state.check_len(self.edge_count())?;
        Ok(self.connects_all_mask(state.index()))
    }

    /// `mask` uses truth-table bit order (edge 0 is the most significant bit).
    pub(crate) fn connects_all_mask(&self, mask: u64) -> bool {
        let m = self.edges.len();
        let mut sets = DisjointSets::new(self.node_count);
        let mut remaining = self.node_count - 1;
        if remaining == 0 {
            return true;
        }
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if mask >> (m - 1 - i) & 1 == 1 && sets.union(u, v) {
                remaining -= 1;
                if remaining == 0 {
                    return true;
                }
            }
        }
        false
    }

    /// Graph without edge `index`; weights and probabilities follow.
    pub fn remove_edge(&self, index: usize) -> Result<Self> {
        if index >= self.edges.len() {
            return Err(Error::Domain(format!("no edge {index}")));
        }
        let keep = |i: usize| i != index;
        Ok(self.filter_edges(keep, |v| v))
    }

    /// Graph without node `node` and its incident edges; remaining nodes are renumbered.
    pub fn remove_node(&self, node: usize) -> Result<Self> {
        if node >= self.node_count || self.node_count == 1 {
            return Err(Error::Domain(format!("cannot remove node {node}")));
        }
        let relabel = |v: usize| if v > node { v - 1 } else { v };
        let edges = &self.edges;
        let mut g = self.filter_edges(|i| edges[i].0 != node && edges[i].1 != node, relabel);
        g.node_count -= 1;
        Ok(g)
    }

    fn filter_edges(&self, keep: impl Fn(usize) -> bool, relabel: impl Fn(usize) -> usize) -> Self {
        let picked: Vec<usize> = (0..self.edges.len()).filter(|&i| keep(i)).collect();
        let pick = |values: &Option<Vec<T>>| {
            values
                .as_ref()
                .map(|vs| picked.iter().map(|&i| vs[i].clone()).collect())
        };
        UndirectedGraph {
            node_count: self.node_count,
            edges: picked
                .iter()
                .map(|&i| (relabel(self.edges[i].0), relabel(self.edges[i].1)))
                .collect(),
            edge_weights: pick(&self.edge_weights),
            edge_probs: pick(&self.edge_probs),
        }
    }
}
