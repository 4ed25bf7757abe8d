//! Oracles and generators shared by the integration tests. Nothing here calls
//! into the library's own enumeration code.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use sepsys::scalar::Scalar;
use sepsys::{Graph, NamedGraph, Rational, StateWord, System};

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::ratio(n, d)
}

/// Random rational in `[0, 1]` with denominator at most `max_den`.
pub fn random_prob(rng: &mut impl Rng, max_den: i64) -> Rational {
    let d = rng.gen_range(1..=max_den);
    q(rng.gen_range(0..=d), d)
}

/// Depth-first connectivity over the edges selected by `mask` (edge 0 is the
/// most significant bit).
pub fn connected_under(n: usize, edges: &[(usize, usize)], mask: u64) -> bool {
    let m = edges.len();
    let mut adj = vec![Vec::new(); n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        if mask >> (m - 1 - i) & 1 == 1 {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

pub fn connectivity_table(g: &Graph) -> Vec<bool> {
    (0..1u64 << g.edge_count())
        .map(|mask| connected_under(g.node_count(), g.edges(), mask))
        .collect()
}

/// All-terminal reliability straight from the sum over states.
pub fn brute_reliability(g: &Graph, probs: &[Rational]) -> Rational {
    System::from_truth_table(g.edge_count(), connectivity_table(g))
        .unwrap()
        .with_probs(probs.to_vec())
        .unwrap()
        .reliability()
        .unwrap()
}

/// Spanning trees by checking every `(n-1)`-edge subset.
pub fn brute_tree_count(g: &Graph) -> u64 {
    let (n, m) = (g.node_count(), g.edge_count());
    (0..1u64 << m)
        .filter(|mask| mask.count_ones() as usize == n - 1 && connected_under(n, g.edges(), *mask))
        .count() as u64
}

/// Every simple graph on `n` labelled nodes, as edge subsets of `K_n`.
pub fn all_simple_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0..1u64 << pairs.len()).map(move |mask| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::new(n, edges).unwrap()
    })
}

pub fn all_connected_graphs(max_n: usize) -> Vec<Graph> {
    (2..=max_n)
        .flat_map(all_simple_graphs)
        .filter(|g| g.is_connected())
        .collect()
}

pub fn random_connected_graph(rng: &mut impl Rng, n: usize) -> Graph {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    loop {
        let density: f64 = rng.gen_range(0.2..0.9);
        let edges: Vec<_> = pairs.iter().copied().filter(|_| rng.gen_bool(density)).collect();
        let g = Graph::new(n, edges).unwrap();
        if g.is_connected() {
            return g;
        }
    }
}

pub fn random_tree_edges(rng: &mut impl Rng, n: usize) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    (1..n)
        .map(|i| {
            let parent = order[rng.gen_range(0..i)];
            (parent.min(order[i]), parent.max(order[i]))
        })
        .collect()
}

/// A random tree, possibly closed into a single cycle by one extra edge
/// (a parallel edge makes a 2-cycle). Edge order is shuffled.
pub fn random_separable_graph(rng: &mut impl Rng, max_edges: usize) -> Graph {
    let n = rng.gen_range(2..=max_edges);
    let mut edges = random_tree_edges(rng, n);
    if edges.len() < max_edges && rng.gen_bool(0.6) {
        let u = rng.gen_range(0..n);
        let mut v = rng.gen_range(0..n - 1);
        if v >= u {
            v += 1;
        }
        edges.push((u, v));
    }
    edges.shuffle(rng);
    Graph::new(n, edges).unwrap()
}

/// Random antichain of mincuts over `n` components, never containing `1^n`.
pub fn random_monotone_system(rng: &mut impl Rng, n: usize) -> System {
    let full = (1u64 << n) - 1;
    let wanted = rng.gen_range(1..=6);
    let mut cuts: Vec<u64> = Vec::new();
    for _ in 0..wanted * 4 {
        let w = rng.gen_range(0..full);
        let comparable = |a: u64, b: u64| a & b == a || a & b == b;
        if cuts.iter().all(|&c| !comparable(c, w)) {
            cuts.push(w);
        }
        if cuts.len() == wanted {
            break;
        }
    }
    let words = cuts.into_iter().map(|c| StateWord::from_index(n, c).unwrap()).collect();
    System::from_mincuts(n, words).unwrap()
}

/// Named fixtures with at most 16 edges.
pub fn fixtures() -> Vec<(&'static str, Graph)> {
    let named = [
        ("K4", NamedGraph::Complete(4)),
        ("K5", NamedGraph::Complete(5)),
        ("K6", NamedGraph::Complete(6)),
        ("C2", NamedGraph::Cycle(2)),
        ("C5", NamedGraph::Cycle(5)),
        ("P5", NamedGraph::Path(5)),
        ("star6", NamedGraph::Star(6)),
        ("butterfly", NamedGraph::Butterfly),
        ("glasses", NamedGraph::Glasses),
        ("monma221", NamedGraph::Monma(2, 2, 1)),
        ("monma233", NamedGraph::Monma(2, 3, 3)),
        ("kissing43", NamedGraph::KissingCycles(4, 3)),
        ("twocycles352", NamedGraph::TwoCyclesWithPath(3, 5, 2)),
    ];
    let mut out: Vec<(&'static str, Graph)> = named.into_iter().map(|(k, g)| (k, g.build().unwrap())).collect();
    out.push((
        "K33",
        Graph::new(6, (0..3).flat_map(|u| (3..6).map(move |v| (u, v))).collect()).unwrap(),
    ));
    out.push(("kite", Graph::new(4, vec![(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap()));
    out
}

/// Subset-sum DP: number of subsets of `values` summing to `target`.
pub fn subset_sum_count(values: &[u64], target: u64) -> u64 {
    let mut ways = vec![0u64; target as usize + 1];
    ways[0] = 1;
    for &v in values {
        for t in (v as usize..=target as usize).rev() {
            ways[t] += ways[t - v as usize];
        }
    }
    ways[target as usize]
}

pub fn has_partition(values: &[u64]) -> bool {
    let s: u64 = values.iter().sum();
    s.is_multiple_of(2) && subset_sum_count(values, s / 2) > 0
}
