//! Stochastic binary systems: structure functions, path/cut inventories and
//! exact reliability under independent component failures.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;
use crate::scalar::Scalar;
use crate::state::{full_mask, StateWord, MAX_COMPONENTS};
use crate::threshold::ThresholdDescription;

/// Enumeration limits, in number of components.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest `N` for full state sweeps (monotonicity, minpaths, certificates).
    pub eval: usize,
    /// Largest `N` for exact reliability sums.
    pub reliability: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            eval: 24,
            reliability: 20,
        }
    }
}

/// How the structure function is given.
#[derive(Clone, Debug, PartialEq)]
pub enum Representation<T> {
    /// `2^N` values indexed by state word, component 1 most significant.
    TruthTable(Vec<bool>),
    /// Pairwise incomparable maximal failure states; `φ(σ) = 0` iff `σ ≤ ω` for a listed `ω`.
    Mincuts(Vec<StateWord>),
    Threshold(ThresholdDescription<T>),
    /// Edges are components; operational iff the operating edges span a connected graph.
    GraphAllTerminal(UndirectedGraph<T>),
}

impl<T> Representation<T> {
    pub fn kind(&self) -> &'static str {
        match self {
            Representation::TruthTable(_) => "truthtable",
            Representation::Mincuts(_) => "mincuts",
            Representation::Threshold(_) => "threshold",
            Representation::GraphAllTerminal(_) => "graph",
        }
    }
}

/// A structure function over `N` components plus independent operation probabilities.
#[derive(Clone, Debug, PartialEq)]
pub struct BinarySystem<T> {
    component_count: usize,
    representation: Representation<T>,
    probs: Vec<T>,
    caps: Caps,
}

/// Why a structure function is not a monotone system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonotoneViolation {
    /// `lower` is covered by `upper`, yet `φ(lower) = 1` and `φ(upper) = 0`.
    Covering { lower: StateWord, upper: StateWord },
    /// `φ(0) = 1`.
    BottomOperational,
    /// `φ(1) = 0`.
    TopFailed,
}

/// Minimal pathsets and maximal cutsets, both antichains, in decreasing word order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathCutInventory {
    pub minpaths: Vec<StateWord>,
    pub mincuts: Vec<StateWord>,
}

fn check_components(n: usize) -> Result<()> {
    if n == 0 || n > MAX_COMPONENTS {
        Err(Error::Domain(format!(
            "systems need between 1 and {MAX_COMPONENTS} components, got {n}"
        )))
    } else {
        Ok(())
    }
}

impl<T: Scalar> BinarySystem<T> {
    fn with_representation(component_count: usize, representation: Representation<T>) -> Result<Self> {
        check_components(component_count)?;
        Ok(BinarySystem {
            component_count,
            representation,
            probs: vec![T::ratio(1, 2); component_count],
            caps: Caps::default(),
        })
    }

    /// Component probabilities default to 1/2 for every constructor except
    /// [`BinarySystem::from_graph`], which takes the graph's edge probabilities when present.
    pub fn from_truth_table(component_count: usize, table: Vec<bool>) -> Result<Self> {
        check_components(component_count)?;
        if component_count >= usize::BITS as usize - 1 || table.len() != 1usize << component_count {
            return Err(Error::Domain(format!(
                "truth table for {component_count} components needs 2^{component_count} entries, got {}",
                table.len()
            )));
        }
        Self::with_representation(component_count, Representation::TruthTable(table))
    }

    /// System characterised by its mincuts.
    ///
    /// Duplicates are dropped. An empty list stands for the all-zeros mincut,
    /// since a monotone system always fails when every component is down.
    pub fn from_mincuts(component_count: usize, mincuts: Vec<StateWord>) -> Result<Self> {
        check_components(component_count)?;
        let mut unique: Vec<StateWord> = Vec::with_capacity(mincuts.len());
        for w in mincuts {
            w.check_len(component_count)?;
            if w.count_ones() == component_count {
                return Err(Error::Model("the all-ones word cannot be a mincut".into()));
            }
            if !unique.contains(&w) {
                unique.push(w);
            }
        }
        for (i, a) in unique.iter().enumerate() {
            if let Some(b) = unique[i + 1..].iter().find(|b| a.comparable(b)) {
                return Err(Error::Model(format!("mincuts {a} and {b} are comparable")));
            }
        }
        if unique.is_empty() {
            unique.push(StateWord::zeros(component_count)?);
        }
        Self::with_representation(component_count, Representation::Mincuts(unique))
    }

    pub fn from_threshold(desc: ThresholdDescription<T>) -> Result<Self> {
        Self::with_representation(desc.len(), Representation::Threshold(desc))
    }

    pub fn from_graph(graph: UndirectedGraph<T>) -> Result<Self> {
        let probs = graph.edge_probs().map(|p| p.to_vec());
        let mut system = Self::with_representation(graph.edge_count(), Representation::GraphAllTerminal(graph))?;
        if let Some(p) = probs {
            system.probs = p;
        }
        Ok(system)
    }

    /// The family `S_N`: mincuts `1…10…0` (first `⌊N/2⌋` components up) and its complement.
    pub fn sn_family(component_count: usize) -> Result<Self> {
        if component_count < 4 {
            return Err(Error::Domain(format!(
                "the S_N family needs N >= 4, got {component_count}"
            )));
        }
        let first = StateWord::with_components(component_count, 0..component_count / 2)?;
        Self::from_mincuts(component_count, vec![first, first.complement()])
    }

    pub fn with_probs(mut self, probs: Vec<T>) -> Result<Self> {
        if probs.len() != self.component_count {
            return Err(Error::Dimension {
                expected: self.component_count,
                actual: probs.len(),
            });
        }
        if let Some(p) = probs.iter().find(|p| p.is_negative() || **p > T::one()) {
            return Err(Error::Validation(format!("probability {p} outside [0,1]")));
        }
        self.probs = probs;
        Ok(self)
    }

    pub fn with_caps(mut self, caps: Caps) -> Self {
        self.caps = caps;
        self
    }

    pub fn component_count(&self) -> usize {
        self.component_count
    }

    pub fn representation(&self) -> &Representation<T> {
        &self.representation
    }

    pub fn probs(&self) -> &[T] {
        &self.probs
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    /// φ(state).
    pub fn eval(&self, state: &StateWord) -> Result<bool> {
        state.check_len(self.component_count)?;
        Ok(self.eval_index(state.index()))
    }

    pub(crate) fn eval_index(&self, index: u64) -> bool {
        match &self.representation {
            Representation::TruthTable(table) => table[index as usize],
            Representation::Mincuts(cuts) => !cuts.iter().any(|c| index & !c.index() == 0),
            Representation::Threshold(desc) => {
                desc.eval_unchecked(&StateWord::from_index_unchecked(self.component_count, index))
            }
            Representation::GraphAllTerminal(graph) => graph.connects_all_mask(index),
        }
    }

    /// φ for every word, indexed by word; checked against the sweep cap.
    pub fn truth_table(&self) -> Result<Vec<bool>> {
        Error::check_size("component count", self.component_count, self.caps.eval.min(40))?;
        if let Representation::TruthTable(table) = &self.representation {
            return Ok(table.clone());
        }
        let size = 1u64 << self.component_count;
        if self.component_count < 12 {
            Ok((0..size).map(|i| self.eval_index(i)).collect())
        } else {
            Ok((0..size).into_par_iter().map(|i| self.eval_index(i)).collect())
        }
    }

    fn word(&self, index: u64) -> StateWord {
        StateWord::from_index_unchecked(self.component_count, index)
    }

    fn covering_violation(&self, table: &[bool]) -> Option<MonotoneViolation> {
        let n = self.component_count;
        (0..table.len() as u64).find_map(|upper| {
            if table[upper as usize] {
                return None;
            }
            (0..n)
                .map(|bit| 1u64 << bit)
                .filter(|m| upper & m != 0)
                .find(|m| table[(upper & !m) as usize])
                .map(|m| MonotoneViolation::Covering {
                    lower: self.word(upper & !m),
                    upper: self.word(upper),
                })
        })
    }

    /// `Ok(None)` when the system is monotone with `φ(0) = 0` and `φ(1) = 1`.
    pub fn monotone_violation(&self) -> Result<Option<MonotoneViolation>> {
        let table = self.truth_table()?;
        if let Some(v) = self.covering_violation(&table) {
            return Ok(Some(v));
        }
        if table[0] {
            return Ok(Some(MonotoneViolation::BottomOperational));
        }
        if !table[table.len() - 1] {
            return Ok(Some(MonotoneViolation::TopFailed));
        }
        Ok(None)
    }

    pub fn is_monotone(&self) -> Result<bool> {
        Ok(self.monotone_violation()?.is_none())
    }

    fn monotone_table(&self) -> Result<Vec<bool>> {
        let table = self.truth_table()?;
        if let Some(MonotoneViolation::Covering { lower, upper }) = self.covering_violation(&table) {
            return Err(Error::Model(format!(
                "structure function is not monotone: φ({lower}) = 1 but φ({upper}) = 0"
            )));
        }
        Ok(table)
    }

    /// Minimal pathsets and maximal cutsets from one memoised sweep.
    ///
    /// Constant structure functions are accepted: `φ ≡ 0` has no minpaths and
    /// `φ ≡ 1` has no mincuts.
    pub fn inventory(&self) -> Result<PathCutInventory> {
        let table = self.monotone_table()?;
        let n = self.component_count;
        let full = full_mask(n);
        let (mut minpaths, mut mincuts) = (Vec::new(), Vec::new());
        for index in (0..table.len() as u64).rev() {
            let up = table[index as usize];
            let minimal = (0..n).map(|b| 1u64 << b).all(|m| {
                if up {
                    index & m == 0 || !table[(index & !m) as usize]
                } else {
                    index & m != 0 || table[((index | m) & full) as usize]
                }
            });
            if minimal {
                if up {
                    minpaths.push(self.word(index));
                } else {
                    mincuts.push(self.word(index));
                }
            }
        }
        Ok(PathCutInventory { minpaths, mincuts })
    }

    pub fn minpaths(&self) -> Result<Vec<StateWord>> {
        Ok(self.inventory()?.minpaths)
    }

    pub fn mincuts(&self) -> Result<Vec<StateWord>> {
        Ok(self.inventory()?.mincuts)
    }

    /// Exact probability that the system operates.
    pub fn reliability(&self) -> Result<T> {
        Error::check_size("component count", self.component_count, self.caps.reliability)?;
        let table = self.truth_table()?;
        Ok(T::weighted_table_sum(&table, &self.probs))
    }
}
