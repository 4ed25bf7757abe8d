use std::fmt;

use super::{edge_connectivity, UndirectedGraph};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Separable-graph categories; everything else is nonseparable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Category {
    Disconnected,
    Tree,
    ElementaryCycle,
    /// Unicyclic graph that is not itself a cycle.
    CycleWithArborescences,
    Nonseparable,
}

impl Category {
    pub fn is_separable(self) -> bool {
        self != Category::Nonseparable
    }

    pub fn name(self) -> &'static str {
        match self {
            Category::Disconnected => "DISCONNECTED",
            Category::Tree => "TREE",
            Category::ElementaryCycle => "CYCLE",
            Category::CycleWithArborescences => "CYCLE_WITH_ARBORESCENCES",
            Category::Nonseparable => "NONSEPARABLE",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        [
            Category::Disconnected,
            Category::Tree,
            Category::ElementaryCycle,
            Category::CycleWithArborescences,
            Category::Nonseparable,
        ]
        .into_iter()
        .find(|c| c.name() == name)
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GraphClass {
    pub category: Category,
    /// `m - n + #components`
    pub corank: i64,
}

/// Linear-time classification: a connected graph is separable iff its corank is 0 or 1.
pub fn classify<T: Scalar>(graph: &UndirectedGraph<T>) -> GraphClass {
    let components = graph.component_count();
    let (n, m) = (graph.node_count(), graph.edge_count());
    let corank = m as i64 - n as i64 + components as i64;
    let category = if components > 1 {
        Category::Disconnected
    } else if corank == 0 {
        Category::Tree
    } else if corank == 1 && graph.degrees().iter().all(|&d| d == 2) {
        Category::ElementaryCycle
    } else if corank == 1 {
        Category::CycleWithArborescences
    } else {
        Category::Nonseparable
    };
    GraphClass { category, corank }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UtilityDifficulty {
    /// λ(G)
    pub connectivity: i64,
    /// c(G) = m - n + 1
    pub corank: i64,
    /// u(G) = λ - c
    pub utility: i64,
    /// d(G) = c - λ - 1
    pub difficulty: i64,
}

pub fn utility_and_difficulty<T: Scalar>(graph: &UndirectedGraph<T>) -> Result<UtilityDifficulty> {
    if !graph.is_connected() {
        return Err(Error::Domain("utility is defined for connected graphs".into()));
    }
    let connectivity = edge_connectivity(graph) as i64;
    let corank = graph.edge_count() as i64 - graph.node_count() as i64 + 1;
    Ok(UtilityDifficulty {
        connectivity,
        corank,
        utility: connectivity - corank,
        difficulty: corank - connectivity - 1,
    })
}
