//! Exact separability decisions.
//!
//! A monotone system is separable iff the convex hulls of its pathsets and
//! cutsets are disjoint. The decision solves, over an exact field,
//!
//! ```text
//! min t   s.t.  Σ_σ y_σ σ - Σ_ω z_ω ω ≤ t·1,   Σ y = Σ z = 1,   y, z ≥ 0
//! ```
//!
//! with `σ` ranging over minpaths and `ω` over mincuts. Its optimum `t*`
//! equals the best margin `ε` of a unit-norm hyperplane with
//! `n·σ ≥ α0 + ε` on minpaths and `n·ω ≤ α0` on mincuts; the multipliers
//! of the first `N` rows are that hyperplane. When `t* ≤ 0` the primal
//! weights give two convex combinations with `Y ≤ Z`, which are lifted to
//! meet at `Z` exactly.

use crate::error::{Error, Result};
use crate::graph::{global_mincut, mst_cost, UndirectedGraph};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::scalar::{Exact, Scalar};
use crate::state::StateWord;
use crate::system::{BinarySystem, PathCutInventory};
use crate::threshold::{Comparison, ThresholdDescription};

/// Two convex combinations, one of pathsets and one of cutsets, with a common value.
#[derive(Clone, Debug, PartialEq)]
pub struct IntersectionCertificate<T> {
    pub pathsets: Vec<(T, StateWord)>,
    pub cutsets: Vec<(T, StateWord)>,
    pub point: Vec<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SeparabilityVerdict<T> {
    /// Unit-norm hyperplane with strict comparison: pathsets lie strictly above
    /// `alpha0`, cutsets on or below it. `margin` is the optimal gap between
    /// the lowest minpath and `alpha0`.
    Separable {
        hyperplane: ThresholdDescription<T>,
        margin: T,
    },
    /// `margin ≤ 0` is the optimum of the margin program.
    Nonseparable {
        margin: T,
        certificate: IntersectionCertificate<T>,
    },
}

impl<T: Scalar> SeparabilityVerdict<T> {
    pub fn is_separable(&self) -> bool {
        matches!(self, SeparabilityVerdict::Separable { .. })
    }

    pub fn margin(&self) -> &T {
        match self {
            SeparabilityVerdict::Separable { margin, .. } | SeparabilityVerdict::Nonseparable { margin, .. } => margin,
        }
    }

    pub fn hyperplane(&self) -> Option<&ThresholdDescription<T>> {
        match self {
            SeparabilityVerdict::Separable { hyperplane, .. } => Some(hyperplane),
            SeparabilityVerdict::Nonseparable { .. } => None,
        }
    }

    pub fn certificate(&self) -> Option<&IntersectionCertificate<T>> {
        match self {
            SeparabilityVerdict::Separable { .. } => None,
            SeparabilityVerdict::Nonseparable { certificate, .. } => Some(certificate),
        }
    }
}

fn check_antichain(name: &str, words: &[StateWord], n: usize) -> Result<()> {
    for (i, a) in words.iter().enumerate() {
        a.check_len(n)?;
        if let Some(b) = words[i + 1..].iter().find(|b| a.comparable(b)) {
            return Err(Error::Model(format!("{name} {a} and {b} are comparable")));
        }
    }
    Ok(())
}

fn combination<T: Scalar>(terms: &[(T, StateWord)], n: usize) -> Vec<T> {
    let mut point = vec![T::zero(); n];
    for (w, word) in terms {
        for i in word.ones_positions() {
            point[i] = point[i].clone() + w.clone();
        }
    }
    point
}

fn dot<T: Scalar>(weights: &[T], word: &StateWord) -> T {
    word.ones_positions().fold(T::zero(), |acc, i| acc + weights[i].clone())
}

/// Separating hyperplane for a system whose structure function is identically 0:
/// `Σ σ_i > 2N` after normalisation, which no word satisfies.
fn vacuous_verdict<T: Scalar>(n: usize) -> Result<SeparabilityVerdict<T>> {
    let hyperplane =
        ThresholdDescription::new(vec![T::one(); n], T::from_int(2 * n as i64), Comparison::Strict)?.normalize()?;
    Ok(SeparabilityVerdict::Separable {
        hyperplane,
        margin: T::one(),
    })
}

/// Decides separability of the monotone system with the given minpaths and mincuts.
pub fn separability_margin<T: Exact>(
    minpaths: &[StateWord],
    mincuts: &[StateWord],
    n: usize,
) -> Result<SeparabilityVerdict<T>> {
    check_antichain("minpaths", minpaths, n)?;
    check_antichain("mincuts", mincuts, n)?;
    match (minpaths.is_empty(), mincuts.is_empty()) {
        (true, true) => return Err(Error::Degenerate("no minpaths and no mincuts".into())),
        (true, false) => return vacuous_verdict(n),
        (false, true) => {
            return Err(Error::Model(
                "a structure function without cutsets is not a monotone system".into(),
            ))
        }
        _ => {}
    }

    let (p, c) = (minpaths.len(), mincuts.len());
    // columns: y (p), z (c), t⁺, t⁻
    let width = p + c + 2;
    let mut objective = vec![T::zero(); width];
    objective[p + c] = -T::one();
    objective[p + c + 1] = T::one();
    let mut lp = LinearProgram::new(objective);
    for i in 0..n {
        let mut row = vec![T::zero(); width];
        for (k, w) in minpaths.iter().enumerate() {
            if w.get(i) {
                row[k] = T::one();
            }
        }
        for (k, w) in mincuts.iter().enumerate() {
            if w.get(i) {
                row[p + k] = -T::one();
            }
        }
        row[p + c] = -T::one();
        row[p + c + 1] = T::one();
        lp.constrain(row, Relation::Le, T::zero());
    }
    let mut on_paths = vec![T::zero(); width];
    on_paths[..p].iter_mut().for_each(|x| *x = T::one());
    lp.constrain(on_paths, Relation::Eq, T::one());
    let mut on_cuts = vec![T::zero(); width];
    on_cuts[p..p + c].iter_mut().for_each(|x| *x = T::one());
    lp.constrain(on_cuts, Relation::Eq, T::one());

    let solution = match lp.solve() {
        LpOutcome::Optimal(s) => s,
        other => {
            return Err(Error::Witness(format!(
                "margin program should be feasible and bounded, solver returned {other:?}"
            )))
        }
    };
    let best = -solution.value.clone();

    if best.is_positive() {
        let weights: Vec<T> = solution.dual[..n].to_vec();
        let total = weights.iter().fold(T::zero(), |a, w| a + w.clone());
        if total != T::one() || weights.iter().any(|w| w.is_negative()) {
            return Err(Error::Witness(
                "hyperplane multipliers are not a unit-norm vector".into(),
            ));
        }
        let alpha0 = mincuts
            .iter()
            .map(|w| dot(&weights, w))
            .max()
            .expect("mincuts are non-empty");
        let lowest = minpaths
            .iter()
            .map(|w| dot(&weights, w))
            .min()
            .expect("minpaths are non-empty");
        let margin = lowest - alpha0.clone();
        if margin != best {
            return Err(Error::Witness(format!(
                "hyperplane margin {margin} differs from the optimum {best}"
            )));
        }
        return Ok(SeparabilityVerdict::Separable {
            hyperplane: ThresholdDescription::new(weights, alpha0, Comparison::Strict)?,
            margin,
        });
    }

    let weighted = |words: &[StateWord], offset: usize| -> Vec<(T, StateWord)> {
        words
            .iter()
            .enumerate()
            .filter(|(k, _)| solution.primal[offset + k].is_positive())
            .map(|(k, w)| (solution.primal[offset + k].clone(), *w))
            .collect()
    };
    let cutsets = weighted(mincuts, p);
    let point = combination(&cutsets, n);
    let pathsets = lift_to(weighted(minpaths, 0), &point);
    let certificate = IntersectionCertificate {
        pathsets,
        cutsets,
        point,
    };
    if !certificate.is_consistent() {
        return Err(Error::Witness("convex combinations do not meet".into()));
    }
    Ok(SeparabilityVerdict::Nonseparable {
        margin: best,
        certificate,
    })
}

/// Raises coordinates of a convex combination of words until it equals
/// `target`, which must dominate it componentwise and lie in the unit cube.
/// Every resulting word dominates one of the original words.
fn lift_to<T: Exact>(mut terms: Vec<(T, StateWord)>, target: &[T]) -> Vec<(T, StateWord)> {
    let n = target.len();
    let current = combination(&terms, n);
    for i in 0..n {
        let mut deficit = target[i].clone() - current[i].clone();
        let mut k = 0;
        while deficit.is_positive() && k < terms.len() {
            if !terms[k].1.get(i) {
                let raised = terms[k].1.with(i, true);
                if terms[k].0 <= deficit {
                    deficit = deficit - terms[k].0.clone();
                    terms[k].1 = raised;
                } else {
                    terms[k].0 = terms[k].0.clone() - deficit.clone();
                    terms.push((deficit.clone(), raised));
                    deficit = T::zero();
                }
            }
            k += 1;
        }
        debug_assert!(deficit.is_zero(), "target must lie in the unit cube");
    }
    let mut merged: Vec<(T, StateWord)> = Vec::with_capacity(terms.len());
    terms.sort_by_key(|(_, w)| std::cmp::Reverse(w.index()));
    for (w, word) in terms {
        match merged.last_mut() {
            Some((acc, last)) if *last == word => *acc = acc.clone() + w,
            _ => merged.push((w, word)),
        }
    }
    merged
}

impl<T: Exact> IntersectionCertificate<T> {
    /// Both weight lists are convex and both combinations equal `point`.
    pub fn is_consistent(&self) -> bool {
        let convex = |terms: &[(T, StateWord)]| {
            !terms.is_empty()
                && terms.iter().all(|(w, _)| !w.is_negative())
                && terms.iter().fold(T::zero(), |a, (w, _)| a + w.clone()) == T::one()
        };
        let n = self.point.len();
        convex(&self.pathsets)
            && convex(&self.cutsets)
            && combination(&self.pathsets, n) == self.point
            && combination(&self.cutsets, n) == self.point
    }

    /// Consistent, and every listed word really is a pathset (resp. cutset) of `system`.
    pub fn verify(&self, system: &BinarySystem<T>) -> Result<bool> {
        if self.point.len() != system.component_count() {
            return Err(Error::Dimension {
                expected: system.component_count(),
                actual: self.point.len(),
            });
        }
        for (_, w) in self.pathsets.iter().chain(&self.cutsets) {
            w.check_len(system.component_count())?;
        }
        Ok(self.is_consistent()
            && self.pathsets.iter().all(|(_, w)| system.eval_index(w.index()))
            && self.cutsets.iter().all(|(_, w)| !system.eval_index(w.index())))
    }
}

/// Enumerates minpaths and mincuts, then decides separability.
///
/// `φ ≡ 0` is reported separable by a hyperplane no word reaches; other
/// non-monotone structure functions are rejected.
pub fn is_separable<T: Exact>(system: &BinarySystem<T>) -> Result<SeparabilityVerdict<T>> {
    let PathCutInventory { minpaths, mincuts } = system.inventory()?;
    separability_margin(&minpaths, &mincuts, system.component_count())
}

/// Non-negative component costs together with the cheapest pathset and cutset.
///
/// The cost of a cutset is the total cost of its failed components.
#[derive(Clone, Debug, PartialEq)]
pub struct CostAssignment<T> {
    pub costs: Vec<T>,
    /// `S = Σ n_i`
    pub total: T,
    /// `c(σ)`: cheapest pathset, `Σ_{σ_i = 1} n_i`.
    pub min_path_cost: T,
    /// `c(ω)`: cheapest cutset, `Σ_{ω_i = 0} n_i`.
    pub min_cut_cost: T,
}

fn check_costs<T: Scalar>(costs: &[T], n: usize) -> Result<T> {
    if costs.len() != n {
        return Err(Error::Dimension {
            expected: n,
            actual: costs.len(),
        });
    }
    if let Some(c) = costs.iter().find(|c| c.is_negative()) {
        return Err(Error::Validation(format!("negative cost {c}")));
    }
    Ok(costs.iter().fold(T::zero(), |a, c| a + c.clone()))
}

impl<T: Scalar> CostAssignment<T> {
    /// Minimum costs taken over the antichains of `inventory`; monotonicity
    /// makes every other pathset and cutset at least as expensive.
    pub fn from_inventory(costs: Vec<T>, inventory: &PathCutInventory, n: usize) -> Result<Self> {
        let total = check_costs(&costs, n)?;
        let path_costs: Vec<T> = inventory.minpaths.iter().map(|w| dot(&costs, w)).collect();
        let cut_costs: Vec<T> = inventory.mincuts.iter().map(|w| dot(&costs, &w.complement())).collect();
        let (Some(min_path_cost), Some(min_cut_cost)) = (T::min_of(&path_costs), T::min_of(&cut_costs)) else {
            return Err(Error::Model(
                "cost criterion needs at least one minpath and one mincut".into(),
            ));
        };
        Ok(CostAssignment {
            costs,
            total,
            min_path_cost,
            min_cut_cost,
        })
    }

    /// All-terminal case: cheapest pathset is a minimum spanning tree,
    /// cheapest cutset a global minimum cut.
    pub fn for_graph(graph: &UndirectedGraph<T>, costs: Vec<T>) -> Result<Self> {
        let total = check_costs(&costs, graph.edge_count())?;
        let min_path_cost = mst_cost(graph, &costs)?;
        let min_cut_cost = global_mincut(graph, &costs)?.value;
        Ok(CostAssignment {
            costs,
            total,
            min_path_cost,
            min_cut_cost,
        })
    }

    /// `S < c(σ) + c(ω)`.
    pub fn is_feasible(&self) -> bool {
        verify_assignment_criterion(self)
    }

    /// Hyperplane `Σ n_i x_i ≥ c(σ)` (non-strict on pathsets).
    pub fn to_hyperplane(&self) -> Result<ThresholdDescription<T>> {
        if !self.is_feasible() {
            return Err(Error::Witness(format!(
                "assignment is infeasible: S = {} is not below {} + {}",
                self.total, self.min_path_cost, self.min_cut_cost
            )));
        }
        ThresholdDescription::new(self.costs.clone(), self.min_path_cost.clone(), Comparison::NonStrict)
    }

    /// Same assignment with every cost multiplied by `factor > 0`.
    pub fn scaled(&self, factor: &T) -> Result<Self> {
        if !factor.is_positive() {
            return Err(Error::Domain(format!("scale factor {factor} is not positive")));
        }
        let f = |x: &T| x.clone() * factor.clone();
        Ok(CostAssignment {
            costs: self.costs.iter().map(f).collect(),
            total: f(&self.total),
            min_path_cost: f(&self.min_path_cost),
            min_cut_cost: f(&self.min_cut_cost),
        })
    }
}

pub fn verify_assignment_criterion<T: Scalar>(assignment: &CostAssignment<T>) -> bool {
    assignment.total < assignment.min_path_cost.clone() + assignment.min_cut_cost.clone()
}

pub fn assignment_to_hyperplane<T: Scalar>(assignment: &CostAssignment<T>) -> Result<ThresholdDescription<T>> {
    assignment.to_hyperplane()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::NamedGraph;
    use crate::state::word;
    use crate::Rational;
    use num_traits::Signed;

    type S = BinarySystem<Rational>;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn words(list: &[&str]) -> Vec<StateWord> {
        list.iter().map(|s| word(s)).collect()
    }

    fn graph_system(g: NamedGraph) -> S {
        S::from_graph(g.build().unwrap()).unwrap()
    }

    /// φ induced by the hyperplane agrees with the system everywhere.
    fn reproduces(system: &S, h: &ThresholdDescription<Rational>) -> bool {
        let n = system.component_count();
        (0..1u64 << n).all(|i| {
            let w = StateWord::from_index(n, i).unwrap();
            h.eval(&w).unwrap() == system.eval(&w).unwrap()
        })
    }

    #[test]
    fn series_margin() {
        let v: SeparabilityVerdict<Rational> = separability_margin(&words(&["11"]), &words(&["01", "10"]), 2).unwrap();
        let h = v.hyperplane().unwrap();
        assert_eq!(v.margin(), &q(1, 2));
        assert_eq!(h.weights(), &[q(1, 2), q(1, 2)]);
        assert_eq!(h.alpha0(), &q(1, 2));
        assert_eq!(h.comparison(), Comparison::Strict);
    }

    #[test]
    fn sn_four_certificate() {
        let s = S::sn_family(4).unwrap();
        let v = is_separable(&s).unwrap();
        assert!(!v.is_separable());
        assert!(!v.margin().is_positive());
        let cert = v.certificate().unwrap();
        assert_eq!(cert.point, vec![q(1, 2); 4]);
        assert!(cert.verify(&s).unwrap());
        let cut_words: Vec<StateWord> = cert.cutsets.iter().map(|(_, w)| *w).collect();
        assert_eq!(cut_words, words(&["1100", "0011"]));
    }

    #[test]
    fn graph_verdicts() {
        assert!(!is_separable(&graph_system(NamedGraph::Complete(4)))
            .unwrap()
            .is_separable());
        assert!(!is_separable(&graph_system(NamedGraph::Butterfly))
            .unwrap()
            .is_separable());
        let c5 = graph_system(NamedGraph::Cycle(5));
        let v = is_separable(&c5).unwrap();
        assert!(reproduces(&c5, v.hyperplane().unwrap()));
        let cert_holder = graph_system(NamedGraph::Monma(2, 2, 1));
        let v = is_separable(&cert_holder).unwrap();
        assert!(v.certificate().unwrap().verify(&cert_holder).unwrap());
    }

    #[test]
    fn constant_and_invalid_inputs() {
        let dead = S::from_graph(UndirectedGraph::new(3, vec![(0, 1)]).unwrap()).unwrap();
        let v = is_separable(&dead).unwrap();
        assert!(reproduces(&dead, v.hyperplane().unwrap()));

        let alive = S::from_truth_table(2, vec![true; 4]).unwrap();
        assert!(matches!(is_separable(&alive), Err(Error::Model(_))));
        let xor = S::from_truth_table(2, vec![false, true, true, false]).unwrap();
        assert!(matches!(is_separable(&xor), Err(Error::Model(_))));

        assert!(matches!(
            separability_margin::<Rational>(&[], &[], 2),
            Err(Error::Degenerate(_))
        ));
        assert!(matches!(
            separability_margin::<Rational>(&words(&["10", "11"]), &words(&["00"]), 2),
            Err(Error::Model(_))
        ));
    }

    #[test]
    fn assignment_examples() {
        let tree: UndirectedGraph<Rational> = NamedGraph::Path(4).build().unwrap();
        let a = CostAssignment::for_graph(&tree, vec![q(1, 1); 3]).unwrap();
        assert_eq!(
            (a.total.clone(), a.min_path_cost.clone(), a.min_cut_cost.clone()),
            (q(3, 1), q(3, 1), q(1, 1))
        );
        assert!(verify_assignment_criterion(&a));
        let h = assignment_to_hyperplane(&a).unwrap();
        assert_eq!(h.weights(), &vec![q(1, 1); 3][..]);
        assert_eq!(h.alpha0(), &q(3, 1));

        let c4: UndirectedGraph<Rational> = NamedGraph::Cycle(4).build().unwrap();
        let a = CostAssignment::for_graph(&c4, vec![q(1, 1); 4]).unwrap();
        assert_eq!(
            (a.total.clone(), a.min_path_cost.clone(), a.min_cut_cost.clone()),
            (q(4, 1), q(3, 1), q(2, 1))
        );
        assert_eq!(a.to_hyperplane().unwrap().alpha0(), &q(3, 1));
        assert!(reproduces(&S::from_graph(c4).unwrap(), &a.to_hyperplane().unwrap()));

        let series = S::from_mincuts(2, words(&["01", "10"])).unwrap();
        let a = CostAssignment::from_inventory(vec![q(1, 1); 2], &series.inventory().unwrap(), 2).unwrap();
        let h = a.to_hyperplane().unwrap();
        assert_eq!((h.weights(), h.alpha0()), (&[q(1, 1), q(1, 1)][..], &q(2, 1)));

        let b: UndirectedGraph<Rational> = NamedGraph::Butterfly.build().unwrap();
        for costs in [vec![1, 1, 1, 1, 1, 1], vec![1, 2, 3, 4, 5, 6], vec![5, 1, 1, 1, 1, 9]] {
            let a = CostAssignment::for_graph(&b, costs.iter().map(|&c| q(c, 1)).collect()).unwrap();
            assert!(!a.is_feasible());
            assert!(matches!(a.to_hyperplane(), Err(Error::Witness(_))));
        }
    }

    #[test]
    fn scaling_preserves_the_criterion() {
        let c5: UndirectedGraph<Rational> = NamedGraph::Cycle(5).build().unwrap();
        let a = CostAssignment::for_graph(&c5, vec![q(1, 1), q(5, 4), q(1, 1), q(3, 2), q(1, 1)]).unwrap();
        let scaled = a.scaled(&q(7, 3)).unwrap();
        assert_eq!(a.is_feasible(), scaled.is_feasible());
        let sys = S::from_graph(c5).unwrap();
        assert!(reproduces(&sys, &scaled.to_hyperplane().unwrap()));
        assert!(a.scaled(&q(0, 1)).is_err());
    }

    #[test]
    fn lifting_reaches_target() {
        let terms = vec![(q(1, 2), word("100")), (q(1, 2), word("010"))];
        let lifted = lift_to(terms, &[q(1, 2), q(1, 2), q(3, 4)]);
        assert_eq!(combination(&lifted, 3), vec![q(1, 2), q(1, 2), q(3, 4)]);
        assert!(lifted.iter().all(|(_, w)| w.get(2) || w.count_ones() == 1));
    }
}
