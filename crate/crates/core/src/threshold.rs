//! Threshold (hyperplane-defined) systems.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::state::StateWord;

/// How a weighted sum is compared with the threshold to call a state a pathset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Comparison {
    /// pathset iff `Σ n_i σ_i > α0`
    Strict,
    /// pathset iff `Σ n_i σ_i ≥ α0`
    NonStrict,
}

impl Comparison {
    pub fn holds<T: PartialOrd>(self, lhs: &T, rhs: &T) -> bool {
        match self {
            Comparison::Strict => lhs > rhs,
            Comparison::NonStrict => lhs >= rhs,
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            Comparison::Strict => "strict",
            Comparison::NonStrict => "nonstrict",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Comparison::Strict => ">",
            Comparison::NonStrict => ">=",
        }
    }
}

/// Non-negative weights and a threshold: a separating hyperplane.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThresholdDescription<T> {
    weights: Vec<T>,
    alpha0: T,
    comparison: Comparison,
}

impl<T: Scalar> ThresholdDescription<T> {
    pub fn new(weights: Vec<T>, alpha0: T, comparison: Comparison) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Domain("threshold needs at least one weight".into()));
        }
        if let Some(w) = weights.iter().find(|w| w.is_negative()) {
            return Err(Error::Domain(format!("negative weight {w}")));
        }
        Ok(ThresholdDescription {
            weights,
            alpha0,
            comparison,
        })
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn alpha0(&self) -> &T {
        &self.alpha0
    }

    pub fn comparison(&self) -> Comparison {
        self.comparison
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `Σ n_i σ_i`.
    pub fn weighted_sum(&self, state: &StateWord) -> T {
        state
            .ones_positions()
            .fold(T::zero(), |acc, i| acc + self.weights[i].clone())
    }

    pub fn eval(&self, state: &StateWord) -> Result<bool> {
        state.check_len(self.len())?;
        Ok(self.eval_unchecked(state))
    }

    pub(crate) fn eval_unchecked(&self, state: &StateWord) -> bool {
        self.comparison.holds(&self.weighted_sum(state), &self.alpha0)
    }

    /// Rescales to unit 1-norm; the induced structure function is unchanged.
    pub fn normalize(&self) -> Result<Self> {
        let total = self.weights.iter().fold(T::zero(), |acc, w| acc + w.clone());
        if !total.is_positive() {
            return Err(Error::Degenerate("all hyperplane weights are zero".into()));
        }
        Ok(ThresholdDescription {
            weights: self.weights.iter().map(|w| w.clone() / total.clone()).collect(),
            alpha0: self.alpha0.clone() / total,
            comparison: self.comparison,
        })
    }

    /// Multiplies weights and threshold by a positive factor.
    pub fn scaled(&self, factor: &T) -> Result<Self> {
        if !factor.is_positive() {
            return Err(Error::Domain(format!("scale factor {factor} is not positive")));
        }
        Ok(ThresholdDescription {
            weights: self.weights.iter().map(|w| w.clone() * factor.clone()).collect(),
            alpha0: self.alpha0.clone() * factor.clone(),
            comparison: self.comparison,
        })
    }
}

impl<T: Scalar> fmt::Display for ThresholdDescription<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.weights.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, " {} {}", self.comparison.symbol(), self.alpha0)
    }
}
