use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::UndirectedGraph;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Union-find with path halving and union by size.
#[derive(Clone, Debug)]
pub struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
    sets: usize,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            size: vec![1; n],
            sets: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the sets of `a` and `b`; false if they were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.sets -= 1;
        true
    }

    pub fn set_count(&self) -> usize {
        self.sets
    }
}

fn check_weights<T>(graph: &UndirectedGraph<T>, weights: &[T]) -> Result<()>
where
    T: Scalar,
{
    if weights.len() != graph.edge_count() {
        return Err(Error::Dimension {
            expected: graph.edge_count(),
            actual: weights.len(),
        });
    }
    if weights.iter().any(|w| w.is_negative()) {
        return Err(Error::Validation("edge weights must be non-negative".into()));
    }
    Ok(())
}

/// Total weight of a minimum spanning tree (Kruskal).
pub fn mst_cost<T: Scalar>(graph: &UndirectedGraph<T>, weights: &[T]) -> Result<T> {
    check_weights(graph, weights)?;
    let mut order: Vec<usize> = (0..graph.edge_count()).collect();
    order.sort_by(|&a, &b| weights[a].partial_cmp(&weights[b]).unwrap_or(std::cmp::Ordering::Equal));
    let mut sets = DisjointSets::new(graph.node_count());
    let mut total = T::zero();
    for i in order {
        let (u, v) = graph.edges()[i];
        if sets.union(u, v) {
            total = total + weights[i].clone();
        }
    }
    if sets.set_count() != 1 {
        return Err(Error::Disconnected);
    }
    Ok(total)
}

/// A minimum-weight disconnecting edge set.
#[derive(Clone, Debug, PartialEq)]
pub struct GlobalCut<T> {
    pub value: T,
    /// Indices of the edges crossing the cut.
    pub edges: Vec<usize>,
    /// Nodes on one shore of the cut.
    pub side: Vec<usize>,
}

/// Global minimum cut by Stoer–Wagner maximum-adjacency contraction.
pub fn global_mincut<T: Scalar>(graph: &UndirectedGraph<T>, weights: &[T]) -> Result<GlobalCut<T>> {
    check_weights(graph, weights)?;
    let n = graph.node_count();
    if n < 2 {
        return Err(Error::Domain("a cut needs at least two nodes".into()));
    }
    let mut adj = vec![vec![T::zero(); n]; n];
    for (&(u, v), w) in graph.edges().iter().zip(weights) {
        adj[u][v] = adj[u][v].clone() + w.clone();
        adj[v][u] = adj[v][u].clone() + w.clone();
    }
    let mut groups: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut best: Option<(T, Vec<usize>)> = None;

    while active.len() > 1 {
        let mut added = vec![false; n];
        let mut key = vec![T::zero(); n];
        let mut prev = active[0];
        let mut last = active[0];
        for step in 0..active.len() {
            let next = active
                .iter()
                .copied()
                .filter(|&v| !added[v])
                .fold(None, |acc: Option<usize>, v| match acc {
                    Some(a) if key[a] >= key[v] => Some(a),
                    _ => Some(v),
                })
                .expect("an unvisited active node remains");
            added[next] = true;
            if step + 1 == active.len() {
                last = next;
            } else {
                prev = next;
            }
            for &v in &active {
                if !added[v] {
                    key[v] = key[v].clone() + adj[next][v].clone();
                }
            }
        }
        let phase_cut = key[last].clone();
        if best.as_ref().is_none_or(|(b, _)| phase_cut < *b) {
            best = Some((phase_cut, groups[last].clone()));
        }
        // contract `last` into `prev`
        let absorbed = std::mem::take(&mut groups[last]);
        groups[prev].extend(absorbed);
        let row = adj[last].clone();
        for (v, w) in row.into_iter().enumerate() {
            adj[prev][v] = adj[prev][v].clone() + w.clone();
            adj[v][prev] = adj[v][prev].clone() + w;
        }
        adj[prev][prev] = T::zero();
        active.retain(|&v| v != last);
    }

    let (value, mut side) = best.expect("at least one phase ran");
    side.sort_unstable();
    let mut in_side = vec![false; n];
    for &v in &side {
        in_side[v] = true;
    }
    let edges = graph
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, &(u, v))| in_side[u] != in_side[v])
        .map(|(i, _)| i)
        .collect();
    Ok(GlobalCut { value, edges, side })
}

/// λ(G): fewest edges whose removal disconnects the graph; 0 if already disconnected.
pub fn edge_connectivity<T: Scalar>(graph: &UndirectedGraph<T>) -> usize {
    if graph.node_count() < 2 || !graph.is_connected() {
        return 0;
    }
    let unit = vec![T::one(); graph.edge_count()];
    global_mincut(graph, &unit).map(|cut| cut.edges.len()).unwrap_or(0)
}

/// τ(G) by the matrix-tree theorem, fraction-free (Bareiss) elimination on
/// the reduced Laplacian.
pub fn spanning_tree_count<T: Scalar>(graph: &UndirectedGraph<T>) -> BigInt {
    let n = graph.node_count();
    if n == 1 {
        return BigInt::one();
    }
    let size = n - 1;
    let mut m = vec![vec![BigInt::zero(); size]; size];
    for &(u, v) in graph.edges() {
        // drop the row and column of node n-1
        for (a, b) in [(u, v), (v, u)] {
            if a < size {
                m[a][a] += 1;
                if b < size {
                    m[a][b] -= 1;
                }
            }
        }
    }
    bareiss_determinant(m)
}

fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let value = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = value;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = if n == 0 { BigInt::one() } else { m[n - 1][n - 1].clone() };
    let det = sign * det;
    debug_assert!(!det.is_negative());
    det
}
