//! Dense two-phase primal simplex over an exact ordered field.
//!
//! Pricing is Dantzig's most-negative reduced cost until a run of degenerate
//! pivots is observed; from then on Bland's smallest-index rule is used for
//! the rest of the solve, which rules out cycling. With an [`Exact`] scalar
//! every comparison is exact, so optimal values can be compared with zero
//! directly.

use crate::scalar::Exact;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

/// `maximize c·x` subject to `a_i·x (≤|≥|=) b_i` and `x ≥ 0`.
#[derive(Clone, Debug)]
pub struct LinearProgram<T> {
    objective: Vec<T>,
    rows: Vec<(Vec<T>, Relation, T)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution<T> {
    pub value: T,
    pub primal: Vec<T>,
    /// One multiplier per constraint with `value = Σ b_i y_i`; non-negative on
    /// `≤` rows, non-positive on `≥` rows, free on equalities.
    pub dual: Vec<T>,
    pub pivots: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome<T> {
    Optimal(LpSolution<T>),
    Infeasible,
    Unbounded,
}

const DEGENERATE_STREAK: usize = 32;

impl<T: Exact> LinearProgram<T> {
    pub fn new(objective: Vec<T>) -> Self {
        LinearProgram {
            objective,
            rows: Vec::new(),
        }
    }

    pub fn variable_count(&self) -> usize {
        self.objective.len()
    }

    pub fn constrain(&mut self, coefficients: Vec<T>, relation: Relation, rhs: T) -> &mut Self {
        assert_eq!(coefficients.len(), self.objective.len(), "constraint width");
        self.rows.push((coefficients, relation, rhs));
        self
    }

    pub fn solve(&self) -> LpOutcome<T> {
        Tableau::build(self).run(&self.objective)
    }
}

struct Tableau<T> {
    /// `rows × (cols + 1)`; the last entry of each row is the right-hand side.
    a: Vec<Vec<T>>,
    basis: Vec<usize>,
    vars: usize,
    cols: usize,
    artificial_from: usize,
    /// Column holding the identity entry of each row at the start.
    unit: Vec<usize>,
    flipped: Vec<bool>,
    pivots: usize,
    bland: bool,
}

impl<T: Exact> Tableau<T> {
    fn build(lp: &LinearProgram<T>) -> Self {
        let m = lp.rows.len();
        let n = lp.objective.len();
        let mut relations = Vec::with_capacity(m);
        let mut flipped = Vec::with_capacity(m);
        for (_, rel, rhs) in &lp.rows {
            let flip = rhs.is_negative();
            flipped.push(flip);
            relations.push(match (rel, flip) {
                (Relation::Le, true) => Relation::Ge,
                (Relation::Ge, true) => Relation::Le,
                (r, _) => *r,
            });
        }
        let slacks = relations.iter().filter(|r| **r != Relation::Eq).count();
        let artificials = relations.iter().filter(|r| **r != Relation::Le).count();
        let artificial_from = n + slacks;
        let cols = artificial_from + artificials;

        let mut a = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut unit = Vec::with_capacity(m);
        let (mut next_slack, mut next_art) = (n, artificial_from);
        for (i, (coeffs, _, rhs)) in lp.rows.iter().enumerate() {
            let sign = if flipped[i] { -T::one() } else { T::one() };
            let mut row: Vec<T> = coeffs.iter().map(|c| c.clone() * sign.clone()).collect();
            row.resize(cols + 1, T::zero());
            row[cols] = rhs.clone() * sign;
            match relations[i] {
                Relation::Le => {
                    row[next_slack] = T::one();
                    basis.push(next_slack);
                    unit.push(next_slack);
                    next_slack += 1;
                }
                Relation::Ge => {
                    row[next_slack] = -T::one();
                    next_slack += 1;
                    row[next_art] = T::one();
                    basis.push(next_art);
                    unit.push(next_art);
                    next_art += 1;
                }
                Relation::Eq => {
                    row[next_art] = T::one();
                    basis.push(next_art);
                    unit.push(next_art);
                    next_art += 1;
                }
            }
            a.push(row);
        }
        Tableau {
            a,
            basis,
            vars: n,
            cols,
            artificial_from,
            unit,
            flipped,
            pivots: 0,
            bland: false,
        }
    }

    /// Reduced costs `c_B B⁻¹ A_j - c_j` and objective value for cost vector `cost`.
    fn price(&self, cost: &[T]) -> (Vec<T>, T) {
        let mut reduced: Vec<T> = (0..=self.cols)
            .map(|j| if j < self.cols { -cost[j].clone() } else { T::zero() })
            .collect();
        for (row, &b) in self.a.iter().zip(&self.basis) {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (r, x) in reduced.iter_mut().zip(row) {
                if !x.is_zero() {
                    *r = r.clone() + cb.clone() * x.clone();
                }
            }
        }
        let value = reduced.pop().expect("rhs slot");
        (reduced, value)
    }

    fn pivot(&mut self, r: usize, c: usize, reduced: &mut [T], value: &mut T) {
        let p = self.a[r][c].clone();
        if !p.is_one() {
            for x in self.a[r].iter_mut() {
                if !x.is_zero() {
                    *x = x.clone() / p.clone();
                }
            }
        }
        let support: Vec<usize> = (0..=self.cols).filter(|&j| !self.a[r][j].is_zero()).collect();
        let pivot_row = self.a[r].clone();
        for (i, row) in self.a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &support {
                row[j] = row[j].clone() - f.clone() * pivot_row[j].clone();
            }
        }
        let f = reduced[c].clone();
        if !f.is_zero() {
            for &j in &support {
                if j < self.cols {
                    reduced[j] = reduced[j].clone() - f.clone() * pivot_row[j].clone();
                } else {
                    *value = value.clone() - f.clone() * pivot_row[j].clone();
                }
            }
        }
        self.basis[r] = c;
        self.pivots += 1;
    }

    /// Runs simplex iterations for `cost`, letting only columns below `enter_limit` enter.
    /// Returns false when unbounded.
    fn optimize(&mut self, cost: &[T], enter_limit: usize) -> bool {
        let (mut reduced, mut value) = self.price(cost);
        let mut degenerate = 0;
        loop {
            let entering = if self.bland {
                (0..enter_limit).find(|&j| reduced[j].is_negative())
            } else {
                (0..enter_limit)
                    .filter(|&j| reduced[j].is_negative())
                    .fold(None, |best: Option<usize>, j| match best {
                        Some(b) if reduced[b] <= reduced[j] => Some(b),
                        _ => Some(j),
                    })
            };
            let Some(c) = entering else {
                return true;
            };
            let mut leave: Option<(usize, T)> = None;
            for (i, row) in self.a.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = row[self.cols].clone() / row[c].clone();
                let better = match &leave {
                    None => true,
                    Some((k, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*k]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, step)) = leave else {
                return false;
            };
            if step.is_zero() {
                degenerate += 1;
                if degenerate >= DEGENERATE_STREAK {
                    self.bland = true;
                }
            } else {
                degenerate = 0;
            }
            self.pivot(r, c, &mut reduced, &mut value);
        }
    }

    fn run(mut self, objective: &[T]) -> LpOutcome<T> {
        let has_artificials = self.artificial_from < self.cols;
        if has_artificials {
            let phase_one: Vec<T> = (0..self.cols)
                .map(|j| {
                    if j >= self.artificial_from {
                        -T::one()
                    } else {
                        T::zero()
                    }
                })
                .collect();
            self.optimize(&phase_one, self.cols);
            let (_, value) = self.price(&phase_one);
            if value.is_negative() {
                return LpOutcome::Infeasible;
            }
            self.evict_artificials();
        }
        let mut cost: Vec<T> = objective.to_vec();
        cost.resize(self.cols, T::zero());
        if !self.optimize(&cost, self.artificial_from) {
            return LpOutcome::Unbounded;
        }
        let (reduced, value) = self.price(&cost);
        let mut primal = vec![T::zero(); self.vars];
        for (row, &b) in self.a.iter().zip(&self.basis) {
            if b < self.vars {
                primal[b] = row[self.cols].clone();
            }
        }
        let dual = self
            .unit
            .iter()
            .zip(&self.flipped)
            .map(|(&u, &flip)| {
                let y = reduced[u].clone() + cost[u].clone();
                if flip {
                    -y
                } else {
                    y
                }
            })
            .collect();
        LpOutcome::Optimal(LpSolution {
            value,
            primal,
            dual,
            pivots: self.pivots,
        })
    }

    /// Pivots zero-valued artificials out of the basis where a structural or
    /// slack column can replace them; rows where none can are redundant.
    fn evict_artificials(&mut self) {
        let zero_cost = vec![T::zero(); self.cols];
        for r in 0..self.a.len() {
            if self.basis[r] < self.artificial_from {
                continue;
            }
            if let Some(c) = (0..self.artificial_from).find(|&j| !self.a[r][j].is_zero()) {
                let (mut reduced, mut value) = self.price(&zero_cost);
                self.pivot(r, c, &mut reduced, &mut value);
            }
        }
    }
}
