//! PARTITION as a difference of two threshold-system reliabilities.
//!
//! With `n_i = a_i / s` and every `p_i = 1/2`, the system `S2` operates iff
//! `Σ n_i σ_i ≥ 1/2` and `S1` iff `Σ n_i σ_i ≥ 1/2 + 1/(2s)`. Every weighted
//! sum is a multiple of `1/s`, so the two differ exactly on words whose sum
//! is `1/2`, and `R_S2 - R_S1 = #{σ : Σ a_i σ_i = s/2} / 2^N`.

use crate::error::{Error, Result};
use crate::scalar::{Exact, Scalar};
use crate::system::{BinarySystem, Caps};
use crate::threshold::{Comparison, ThresholdDescription};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionInstance {
    values: Vec<u64>,
    total: u64,
}

impl PartitionInstance {
    pub fn new(values: Vec<u64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Validation("partition instance is empty".into()));
        }
        if values.contains(&0) {
            return Err(Error::Validation("partition values must be positive".into()));
        }
        let total = values
            .iter()
            .try_fold(0u64, |acc, &v| acc.checked_add(v))
            .filter(|&t| t <= i64::MAX as u64)
            .ok_or_else(|| Error::Validation("partition total overflows".into()))?;
        Ok(PartitionInstance { values, total })
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// The pair `(S1, S2)`, both non-strict threshold systems with all probabilities 1/2.
pub fn partition_reduction<T: Scalar>(instance: &PartitionInstance) -> Result<(BinarySystem<T>, BinarySystem<T>)> {
    let s = instance.total as i64;
    let weights: Vec<T> = instance.values.iter().map(|&a| T::ratio(a as i64, s)).collect();
    let half = T::ratio(1, 2);
    let raised = half.clone() + T::ratio(1, 2 * s);
    let build = |alpha0: T| -> Result<BinarySystem<T>> {
        let desc = ThresholdDescription::new(weights.clone(), alpha0, Comparison::NonStrict)?;
        BinarySystem::from_threshold(desc)?.with_probs(vec![T::ratio(1, 2); weights.len()])
    };
    Ok((build(raised)?, build(half)?))
}

#[derive(Clone, Debug, PartialEq)]
pub struct PartitionDecision<T> {
    /// 1-based indices of a half-sum subset, `None` when the answer is NO.
    pub witness: Option<Vec<usize>>,
    /// `R_S2(1/2) - R_S1(1/2)`.
    pub difference: T,
    /// Number of words whose weighted sum is exactly `s/2`.
    pub half_sum_count: u64,
}

impl<T> PartitionDecision<T> {
    pub fn is_yes(&self) -> bool {
        self.witness.is_some()
    }
}

pub fn partition_decide<T: Exact>(instance: &PartitionInstance) -> Result<PartitionDecision<T>> {
    partition_decide_capped(instance, Caps::default().reliability)
}

/// Decides through the two reliabilities; the witness is the first half-sum
/// word in decreasing word order.
pub fn partition_decide_capped<T: Exact>(instance: &PartitionInstance, max_n: usize) -> Result<PartitionDecision<T>> {
    let n = instance.len();
    Error::check_size("partition size", n, max_n)?;
    let caps = Caps {
        eval: max_n.max(n),
        reliability: max_n.max(n),
    };
    let (s1, s2) = partition_reduction::<T>(instance)?;
    let difference = s2.with_caps(caps).reliability()? - s1.with_caps(caps).reliability()?;

    let sum_of = |index: u64| -> u64 {
        (0..n)
            .filter(|i| index >> (n - 1 - i) & 1 == 1)
            .map(|i| instance.values[i])
            .sum()
    };
    let mut half_sum_count = 0u64;
    let mut first = None;
    if instance.total.is_multiple_of(2) {
        for index in (0..1u64 << n).rev() {
            if 2 * sum_of(index) == instance.total {
                half_sum_count += 1;
                first.get_or_insert(index);
            }
        }
    }
    let witness = first.map(|index| {
        (0..n)
            .filter(|i| index >> (n - 1 - i) & 1 == 1)
            .map(|i| i + 1)
            .collect()
    });
    if witness.is_some() != difference.is_positive() || (half_sum_count == 0) != difference.is_zero() {
        return Err(Error::Witness(format!(
            "reliability difference {difference} disagrees with {half_sum_count} half-sum words"
        )));
    }
    Ok(PartitionDecision {
        witness,
        difference,
        half_sum_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn instance(values: &[u64]) -> PartitionInstance {
        PartitionInstance::new(values.to_vec()).unwrap()
    }

    fn alpha(system: &BinarySystem<Rational>) -> Rational {
        match system.representation() {
            crate::system::Representation::Threshold(d) => d.alpha0().clone(),
            _ => unreachable!(),
        }
    }

    #[test]
    fn reduction_examples() {
        let (s1, s2) = partition_reduction::<Rational>(&instance(&[1, 1, 2])).unwrap();
        assert_eq!((alpha(&s1), alpha(&s2)), (q(5, 8), q(1, 2)));
        let (s1, _) = partition_reduction::<Rational>(&instance(&[1, 2])).unwrap();
        assert_eq!(alpha(&s1), q(2, 3));
        let (s1, s2) = partition_reduction::<Rational>(&instance(&[1])).unwrap();
        assert_eq!((alpha(&s1), alpha(&s2)), (q(1, 1), q(1, 2)));
    }

    #[test]
    fn decide_examples() {
        let d = partition_decide::<Rational>(&instance(&[1, 1, 2])).unwrap();
        assert_eq!(d.witness, Some(vec![1, 2]));
        assert_eq!((d.half_sum_count, d.difference), (2, q(2, 8)));
        let d = partition_decide::<Rational>(&instance(&[1, 2])).unwrap();
        assert!(!d.is_yes());
        assert_eq!(d.difference, q(0, 1));
        let d = partition_decide::<Rational>(&instance(&[3, 1, 1, 5])).unwrap();
        assert_eq!(d.witness, Some(vec![1, 2, 3]));
    }

    /// Offsetting S1 by `n_min / 2` also admits sums strictly between `1/2`
    /// and `1/2 + n_min / 2` once the smallest value exceeds 1.
    #[test]
    fn minimum_weight_offset_is_too_wide() {
        let inst = instance(&[2, 3]);
        let d = partition_decide::<Rational>(&inst).unwrap();
        assert!(!d.is_yes());
        let weights = vec![q(2, 5), q(3, 5)];
        let wide = ThresholdDescription::new(weights.clone(), q(1, 2) + q(1, 5), Comparison::NonStrict).unwrap();
        let half = ThresholdDescription::new(weights, q(1, 2), Comparison::NonStrict).unwrap();
        let r = |d: ThresholdDescription<Rational>| BinarySystem::from_threshold(d).unwrap().reliability().unwrap();
        assert_eq!(r(half) - r(wide), q(1, 4));
    }

    #[test]
    fn rejects_bad_instances() {
        assert!(PartitionInstance::new(vec![]).is_err());
        assert!(PartitionInstance::new(vec![1, 0]).is_err());
        assert!(matches!(
            partition_decide_capped::<Rational>(&instance(&[1; 5]), 4),
            Err(Error::Size { .. })
        ));
    }
}
