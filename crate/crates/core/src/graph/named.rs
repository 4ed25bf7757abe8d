use super::UndirectedGraph;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Constructors for the graph families used throughout the crate.
///
/// Edge orders are stable and documented per variant, because edge `i` is
/// component `i` of the induced all-terminal system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedGraph {
    /// `K_n`, edges `(i, j)` with `i < j` in lexicographic order.
    Complete(usize),
    /// `C_n` on nodes `0..n`: `(0,1), (1,2), …, (n-2,n-1), (0,n-1)`.
    /// `C_2` is a pair of parallel edges.
    Cycle(usize),
    /// Path on `n` nodes.
    Path(usize),
    /// Star on `n` nodes, centre 0.
    Star(usize),
    /// Two terminals `u = 0`, `v = 1` joined by three internally disjoint
    /// paths with the given numbers of edges; edges listed path by path
    /// from `u` to `v`.
    Monma(usize, usize, usize),
    /// Two triangles sharing node 0: edges `x1 x2 x3` then `y1 y2 y3`.
    Butterfly,
    /// Two triangles joined by a bridge: `x1 x2 x3`, `y1 y2 y3`, then the bridge `z`.
    Glasses,
    /// Cycles of lengths `a` and `b` sharing node 0; first cycle's edges first.
    KissingCycles(usize, usize),
    /// Cycles of lengths `a` and `b` joined by a path of `k ≥ 1` edges;
    /// edges of the first cycle, the second cycle, then the path.
    TwoCyclesWithPath(usize, usize, usize),
}

struct Builder {
    nodes: usize,
    edges: Vec<(usize, usize)>,
}

impl Builder {
    fn new() -> Self {
        Builder {
            nodes: 0,
            edges: Vec::new(),
        }
    }

    fn node(&mut self) -> usize {
        self.nodes += 1;
        self.nodes - 1
    }

    /// Path from `from` to `to` with `len` edges through fresh interior nodes.
    fn path(&mut self, from: usize, to: usize, len: usize) {
        let mut prev = from;
        for _ in 1..len {
            let next = self.node();
            self.edges.push((prev, next));
            prev = next;
        }
        self.edges.push((prev, to));
    }

    /// Cycle of `len` edges through `anchor` and fresh nodes.
    fn cycle(&mut self, anchor: usize, len: usize) {
        let mut prev = anchor;
        let mut nodes = vec![anchor];
        for _ in 1..len {
            let next = self.node();
            self.edges.push((prev, next));
            nodes.push(next);
            prev = next;
        }
        self.edges.push((anchor, prev));
    }

    fn finish<T: Scalar>(self) -> Result<UndirectedGraph<T>> {
        UndirectedGraph::new(self.nodes, self.edges)
    }
}

fn at_least(name: &str, value: usize, min: usize) -> Result<()> {
    if value < min {
        Err(Error::Domain(format!("{name} must be at least {min}, got {value}")))
    } else {
        Ok(())
    }
}

impl NamedGraph {
    pub fn build<T: Scalar>(self) -> Result<UndirectedGraph<T>> {
        let mut b = Builder::new();
        match self {
            NamedGraph::Complete(n) => {
                at_least("complete graph order", n, 1)?;
                b.nodes = n;
                for i in 0..n {
                    for j in i + 1..n {
                        b.edges.push((i, j));
                    }
                }
            }
            NamedGraph::Cycle(n) => {
                at_least("cycle length", n, 2)?;
                let start = b.node();
                b.cycle(start, n);
            }
            NamedGraph::Path(n) => {
                at_least("path order", n, 1)?;
                b.nodes = n;
                b.edges = (1..n).map(|i| (i - 1, i)).collect();
            }
            NamedGraph::Star(n) => {
                at_least("star order", n, 1)?;
                b.nodes = n;
                b.edges = (1..n).map(|i| (0, i)).collect();
            }
            NamedGraph::Monma(l1, l2, l3) => {
                for l in [l1, l2, l3] {
                    at_least("Monma path length", l, 1)?;
                }
                let u = b.node();
                let v = b.node();
                for l in [l1, l2, l3] {
                    b.path(u, v, l);
                }
            }
            NamedGraph::Butterfly => return NamedGraph::KissingCycles(3, 3).build(),
            NamedGraph::Glasses => return NamedGraph::TwoCyclesWithPath(3, 3, 1).build(),
            NamedGraph::KissingCycles(a, c) => {
                at_least("cycle length", a, 2)?;
                at_least("cycle length", c, 2)?;
                let hub = b.node();
                b.cycle(hub, a);
                b.cycle(hub, c);
            }
            NamedGraph::TwoCyclesWithPath(a, c, k) => {
                at_least("cycle length", a, 2)?;
                at_least("cycle length", c, 2)?;
                at_least("linking path length", k, 1)?;
                let left = b.node();
                b.cycle(left, a);
                let right = b.node();
                b.cycle(right, c);
                b.path(left, right, k);
            }
        }
        b.finish()
    }
}
