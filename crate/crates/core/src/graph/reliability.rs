use num_bigint::BigInt;
use rayon::prelude::*;

use super::{classify, edge_connectivity, spanning_tree_count, Category, UndirectedGraph};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::separability::CostAssignment;

/// Default limit on the edge count for subset enumeration.
pub const DEFAULT_SUBSET_CAP: usize = 20;

/// Splits the edges of a unicyclic graph into cycle edges and hanging-tree edges
/// by repeatedly stripping leaves.
fn cycle_edges<T: Scalar>(graph: &UndirectedGraph<T>) -> Vec<bool> {
    let n = graph.node_count();
    let mut degree = graph.degrees();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, &(u, v)) in graph.edges().iter().enumerate() {
        incident[u].push(i);
        incident[v].push(i);
    }
    let mut on_cycle = vec![true; graph.edge_count()];
    let mut leaves: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    while let Some(leaf) = leaves.pop() {
        let Some(&e) = incident[leaf].iter().find(|&&e| on_cycle[e]) else {
            continue;
        };
        on_cycle[e] = false;
        degree[leaf] -= 1;
        let (u, v) = graph.edges()[e];
        let other = if u == leaf { v } else { u };
        degree[other] -= 1;
        if degree[other] == 1 {
            leaves.push(other);
        }
    }
    on_cycle
}

/// `Π p_e + Σ_e (1 - p_e) Π_{e' ≠ e} p_e'`, with prefix/suffix products so
/// that zero probabilities need no division.
fn cycle_reliability<T: Scalar>(probs: &[T]) -> T {
    let k = probs.len();
    let mut prefix = vec![T::one(); k + 1];
    for i in 0..k {
        prefix[i + 1] = prefix[i].clone() * probs[i].clone();
    }
    let mut suffix = vec![T::one(); k + 1];
    for i in (0..k).rev() {
        suffix[i] = suffix[i + 1].clone() * probs[i].clone();
    }
    let one_down = (0..k).fold(T::zero(), |acc, i| {
        acc + (T::one() - probs[i].clone()) * prefix[i].clone() * suffix[i + 1].clone()
    });
    prefix[k].clone() + one_down
}

/// All-terminal reliability of a separable graph in closed form.
pub fn reliability_closed_form<T: Scalar>(graph: &UndirectedGraph<T>, probs: &[T]) -> Result<T> {
    if probs.len() != graph.edge_count() {
        return Err(Error::Dimension {
            expected: graph.edge_count(),
            actual: probs.len(),
        });
    }
    let product = |values: &mut dyn Iterator<Item = &T>| values.fold(T::one(), |acc, p| acc * p.clone());
    match classify(graph).category {
        Category::Disconnected => Ok(T::zero()),
        Category::Tree => Ok(product(&mut probs.iter())),
        Category::ElementaryCycle => Ok(cycle_reliability(probs)),
        Category::CycleWithArborescences => {
            let on_cycle = cycle_edges(graph);
            let cycle: Vec<T> = probs
                .iter()
                .zip(&on_cycle)
                .filter(|(_, &c)| c)
                .map(|(p, _)| p.clone())
                .collect();
            let mut hanging = probs.iter().zip(&on_cycle).filter(|(_, &c)| !c).map(|(p, _)| p);
            Ok(cycle_reliability(&cycle) * product(&mut hanging))
        }
        Category::Nonseparable => Err(Error::Class(
            "nonseparable graph has no closed form; use exhaustive evaluation".into(),
        )),
    }
}

/// Unit costs on tree and cycle edges, cost 3 on hanging-tree edges of a
/// unicyclic graph (3 exceeds the cycle's unit-weight mincut of 2).
pub fn find_feasible_assignment<T: Scalar>(graph: &UndirectedGraph<T>) -> Result<CostAssignment<T>> {
    let class = classify(graph);
    let costs = match class.category {
        Category::Tree | Category::ElementaryCycle => vec![T::one(); graph.edge_count()],
        Category::CycleWithArborescences => cycle_edges(graph)
            .into_iter()
            .map(|c| if c { T::one() } else { T::from_int(3) })
            .collect(),
        other => {
            return Err(Error::Class(format!(
                "no feasible assignment exists for a {} graph",
                other.name()
            )))
        }
    };
    CostAssignment::for_graph(graph, costs)
}

/// Coefficients of the all-terminal reliability polynomial under a common
/// edge reliability `r`:
/// `R(r) = Σ_{i=0}^{c} n_i r^{m-i} (1-r)^i`, with `n_i` the number of
/// connected spanning subgraphs obtained by deleting `i` edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReliabilityPolynomial {
    pub node_count: usize,
    pub edge_count: usize,
    /// λ(G)
    pub connectivity: usize,
    /// c(G) = m - n + 1
    pub corank: usize,
    /// `n_i` for `i = 0..=c`; the last entry is τ(G).
    pub coefficients: Vec<u64>,
    /// τ(G) from the matrix-tree theorem.
    pub tree_number: BigInt,
}

impl ReliabilityPolynomial {
    /// `n_i` for `λ ≤ i < c`: the counts not fixed by `C(m, i)` or τ(G).
    pub fn unknown_coefficients(&self) -> &[u64] {
        let lo = self.connectivity.min(self.corank);
        &self.coefficients[lo..self.corank]
    }

    pub fn eval<T: Scalar>(&self, r: &T) -> T {
        let q = T::one() - r.clone();
        self.coefficients
            .iter()
            .enumerate()
            .fold(T::zero(), |acc, (i, &count)| {
                let up = pow(r, self.edge_count - i);
                let down = pow(&q, i);
                acc + T::from_int(count as i64) * up * down
            })
    }
}

fn pow<T: Scalar>(base: &T, exp: usize) -> T {
    (0..exp).fold(T::one(), |acc, _| acc * base.clone())
}

pub fn reliability_polynomial<T: Scalar>(graph: &UndirectedGraph<T>, cap: usize) -> Result<ReliabilityPolynomial> {
    if !graph.is_connected() {
        return Err(Error::Disconnected);
    }
    let m = graph.edge_count();
    Error::check_size("edge count", m, cap.min(62))?;
    let n = graph.node_count();
    let corank = m + 1 - n;
    let coefficients = (0u64..1 << m)
        .into_par_iter()
        .fold(
            || vec![0u64; corank + 1],
            |mut counts, mask| {
                let removed = m - mask.count_ones() as usize;
                if removed <= corank && graph.connects_all_mask(mask) {
                    counts[removed] += 1;
                }
                counts
            },
        )
        .reduce(
            || vec![0u64; corank + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    let tree_number = spanning_tree_count(graph);
    debug_assert_eq!(tree_number, BigInt::from(coefficients[corank]));
    Ok(ReliabilityPolynomial {
        node_count: n,
        edge_count: m,
        connectivity: edge_connectivity(graph),
        corank,
        coefficients,
        tree_number,
    })
}
